use super::*;
use crate::lattice::Catalog;
use crate::spectral::build_dual_space;

fn lat(c: Catalog) -> Arc<FiniteOrtholattice> {
    Arc::new(c.build(64).unwrap())
}

fn space(c: Catalog) -> Arc<OrthoSpace> {
    Arc::new(build_dual_space(&lat(c)).unwrap().into_space())
}

/// Every table `l → l2` that passes `check_hom`, by exhaustive product.
fn brute_force_homs(l: &Arc<FiniteOrtholattice>, l2: &Arc<FiniteOrtholattice>) -> Vec<Vec<usize>> {
    let (n, k) = (l.len(), l2.len());
    let total = (k as u64).pow(n as u32);
    assert!(total <= 1 << 20);
    (0..total)
        .map(|mut code| {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = (code % k as u64) as usize;
                code /= k as u64;
            }
            t
        })
        .filter(|t| check_hom(&LatticeHom::new(l.clone(), l2.clone(), t.clone()).unwrap()).is_ok())
        .collect()
}

#[test]
fn identity_is_a_hom() {
    let l = lat(Catalog::Oml6);
    assert_eq!(check_hom(&LatticeHom::identity(l)), Ok(()));
}

#[test]
fn collapse_onto_two_element_chain_breaks_ortho() {
    let (l, b1) = (lat(Catalog::Oml6), lat(Catalog::Boolean(1)));
    let table = l.elements().map(|a| usize::from(a != l.zero())).collect();
    let phi = LatticeHom::new(l.clone(), b1, table).unwrap();
    let v = check_hom(&phi).unwrap_err();
    assert_eq!(v.condition, Condition::Ortho);
    assert_eq!(v.witness, vec![l.index_of("a").unwrap()]);
    assert!(matches!(phi.validated(), Err(Error::HomInvalid(_))));
}

#[test]
fn chain_embeds_into_oml6() {
    let (b1, l) = (lat(Catalog::Boolean(1)), lat(Catalog::Oml6));
    let phi = LatticeHom::new(b1, l.clone(), vec![l.zero(), l.one()]).unwrap();
    assert_eq!(check_hom(&phi), Ok(()));
}

#[test]
fn table_shape_is_checked() {
    let (b1, l) = (lat(Catalog::Boolean(1)), lat(Catalog::Oml6));
    assert!(matches!(LatticeHom::new(b1.clone(), l.clone(), vec![0]), Err(Error::Shape(_))));
    assert!(matches!(LatticeHom::new(b1, l, vec![0, 6]), Err(Error::Shape(_))));
}

#[test]
fn enumeration_matches_exhaustive_product() {
    let small = [Catalog::Boolean(1), Catalog::O2x2, Catalog::Oml6, Catalog::O6];
    for &c in &small {
        for &d in &small {
            let (l, l2) = (lat(c), lat(d));
            let found: Vec<Vec<usize>> = enumerate_homs(&l, &l2, &Limits::default())
                .unwrap()
                .iter()
                .map(|h| h.table().to_vec())
                .collect();
            assert_eq!(found, brute_force_homs(&l, &l2), "{c} → {d}");
        }
    }
}

#[test]
fn enumeration_examples() {
    let limits = Limits::default();
    let (b1, l, b2) = (lat(Catalog::Boolean(1)), lat(Catalog::Oml6), lat(Catalog::Boolean(2)));
    assert_eq!(enumerate_homs(&b1, &b1, &limits).unwrap().len(), 1);
    let into = enumerate_homs(&b1, &l, &limits).unwrap();
    assert_eq!(into.len(), 1);
    assert_eq!(into[0].table(), &[l.zero(), l.one()]);
    let homs = enumerate_homs(&l, &b2, &limits).unwrap();
    assert!(homs.iter().all(|h| check_hom(h).is_ok()));
    // OML6 has no two-valued state, so nothing lands in a Boolean algebra
    assert!(homs.is_empty());
    let tiny = Limits {
        max_hom_search: 10,
        ..limits
    };
    assert!(matches!(enumerate_homs(&l, &b2, &tiny), Err(Error::SizeCapExceeded { .. })));
}

#[test]
fn identity_map_is_weak_p() {
    assert_eq!(check_weak_p(&WeakPMorphism::identity(space(Catalog::Oml6))), Ok(()));
}

#[test]
fn constant_map_to_proper_point_fails_back_condition() {
    let (x, y) = (space(Catalog::Oml6), space(Catalog::O2x2));
    let p = 0;
    assert_ne!(p, y.top());
    let psi = WeakPMorphism::new(x.clone(), y.clone(), vec![p; x.len()]).unwrap();
    // constant maps are continuous and ψ(x) ⊥̸ ψ(y) always; the failure is
    // that ω ⊥ everything, so no x with x ⊥̸ ω exists
    let v = check_weak_p(&psi).unwrap_err();
    assert_eq!(v.condition, Condition::Back);
    let (z, yy) = (v.witness[0], v.witness[1]);
    assert_eq!(yy, x.top());
    assert!(!y.frame().perp(z, p));
}

#[test]
fn discontinuous_map_is_caught() {
    // A non-discrete source: the Sierpinski-like two-point space with only
    // {ω} as a proper open. The identity onto the discrete dual of
    // boolean(1) pulls back the open {↑1} to a non-open set.
    let target = space(Catalog::Boolean(1));
    let subbasis = vec![crate::PointSet::singleton(2, target.top())];
    let source = Arc::new(
        OrthoSpace::new("coarse", target.frame().clone(), subbasis, &Limits::default()).unwrap(),
    );
    let psi = WeakPMorphism::new(source, target, vec![0, 1]).unwrap();
    assert_eq!(check_weak_p(&psi).unwrap_err().condition, Condition::Continuity);
}

#[test]
fn dual_of_identity_is_identity() {
    let l = lat(Catalog::Oml6);
    let psi = dualize_hom(&LatticeHom::identity(l)).unwrap();
    assert_eq!(psi.table(), &(0..6).collect::<Vec<_>>()[..]);
    assert_eq!(psi, WeakPMorphism::identity(psi.source().clone()));
    let chi = dualize_map(&psi).unwrap();
    assert_eq!(chi, LatticeHom::identity(chi.source().clone()));
}

#[test]
fn dual_of_chain_inclusion() {
    let (b1, l) = (lat(Catalog::Boolean(1)), lat(Catalog::Oml6));
    let phi = LatticeHom::new(b1.clone(), l.clone(), vec![l.zero(), l.one()]).unwrap();
    let src = build_dual_space(&b1).unwrap();
    let tgt = build_dual_space(&l).unwrap();
    let psi = dualize_hom_between(&phi, &src, &tgt).unwrap();
    assert_eq!(check_weak_p(&psi), Ok(()));
    for (x, f) in tgt.filters().iter().enumerate() {
        let expected = crate::IndexSet::from_fn(2, |a| f.contains(phi.apply(a)));
        assert_eq!(src.filters()[psi.apply(x)].carrier, expected);
    }
    assert_eq!(psi.apply(tgt.omega()), src.omega());

    let chi = dualize_map(&psi).unwrap();
    assert_eq!(check_hom(&chi), Ok(()));
    let bottom = crate::PointSet::singleton(psi.target().len(), psi.target().top());
    let pre = psi.preimage(&bottom);
    assert_eq!(pre, crate::PointSet::singleton(psi.source().len(), psi.source().top()));
}

#[test]
fn dualize_rejects_invalid_morphisms() {
    let (l, b1) = (lat(Catalog::Oml6), lat(Catalog::Boolean(1)));
    let table = l.elements().map(|a| usize::from(a != l.zero())).collect();
    let phi = LatticeHom::new(l, b1, table).unwrap();
    assert!(matches!(dualize_hom(&phi), Err(Error::HomInvalid(_))));

    let (x, y) = (space(Catalog::Oml6), space(Catalog::O2x2));
    let psi = WeakPMorphism::new(x.clone(), y, vec![0; x.len()]).unwrap();
    assert!(matches!(dualize_map(&psi), Err(Error::MapInvalid(_))));
}

#[test]
fn squares_commute_for_identities() {
    let l = lat(Catalog::Oml6);
    assert!(verify_square_lattice(&LatticeHom::identity(l)).unwrap());
    assert!(verify_square_space(&WeakPMorphism::identity(space(Catalog::Oml6))).unwrap());
}

#[test]
fn corrupted_tables_fail_the_squares() {
    let (b1, l) = (lat(Catalog::Boolean(1)), lat(Catalog::Oml6));
    let phi = LatticeHom::new(b1, l.clone(), vec![l.zero(), l.one()]).unwrap();
    assert!(verify_square_lattice(&phi).unwrap());
    for v in 0..l.len() {
        if v != l.one() {
            let bad = phi.with_entry(1, v).unwrap();
            let report = square_lattice_report(&bad, &Limits::default()).unwrap();
            assert!(!report.all_passed(), "{report}");
        }
    }

    let psi = dualize_hom(&phi).unwrap();
    assert!(verify_square_space(&psi).unwrap());
    let mut flipped = 0;
    for x in 0..psi.source().len() {
        for v in 0..psi.target().len() {
            if v != psi.apply(x) {
                flipped += 1;
                assert!(!verify_square_space(&psi.with_entry(x, v).unwrap()).unwrap());
            }
        }
    }
    assert!(flipped > 0);
}

#[test]
fn composition_and_functoriality() {
    let limits = Limits::default();
    let (b1, b2, l) = (lat(Catalog::Boolean(1)), lat(Catalog::O2x2), lat(Catalog::Oml6));
    let phi1 = &enumerate_homs(&b1, &b2, &limits).unwrap()[0];
    for phi2 in enumerate_homs(&b2, &l, &limits).unwrap() {
        let comp = phi2.compose(phi1).unwrap();
        assert_eq!(check_hom(&comp), Ok(()));
        assert_eq!(LatticeHom::identity(l.clone()).compose(&comp).unwrap(), comp);
        let lhs = dualize_hom(&comp).unwrap();
        let rhs = dualize_hom(phi1).unwrap().compose(&dualize_hom(&phi2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = dualize_map(&lhs).unwrap();
        let rhs = dualize_map(&dualize_hom(&phi2).unwrap())
            .unwrap()
            .compose(&dualize_map(&dualize_hom(phi1).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(matches!(phi1.compose(phi1), Err(Error::TypeMismatch(_))));
}

#[test]
fn morphism_json_round_trip() {
    let (b1, l) = (lat(Catalog::Boolean(1)), lat(Catalog::Oml6));
    let phi = LatticeHom::new(b1, l.clone(), vec![l.zero(), l.one()]).unwrap();
    let text = serde_json::to_string(&MorphismDoc::from(&phi)).unwrap();
    assert!(text.contains("\"source\":\"boolean(1)\""), "{text}");
    let back: MorphismDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back.resolve(&Limits::default()).unwrap(), Morphism::Hom(phi.clone()));

    let psi = dualize_hom(&phi).unwrap();
    let text = serde_json::to_string(&MorphismDoc::from(&psi)).unwrap();
    let back: MorphismDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back.resolve(&Limits::default()).unwrap(), Morphism::Map(psi));

    let named: MorphismDoc =
        serde_json::from_str(r#"{"kind":"map","source":"OML6","target":"OML6","table":[0,1,2,3,4,5]}"#).unwrap();
    let Morphism::Map(id) = named.resolve(&Limits::default()).unwrap() else {
        panic!("expected a map");
    };
    assert_eq!(check_weak_p(&id), Ok(()));
}
