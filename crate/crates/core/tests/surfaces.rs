use skeindef::diagram::io::{read_diagram, write_diagram};
use skeindef::diagram::{disk_braid, from_braid, resolve, superpose, tau, torus_multicurve, KState, ProductMode};
use skeindef::exactalg::{int, phi0, PolyZW};
use skeindef::starprod::{hermitian_check, star};
use skeindef::statesum::{
    bracket_order, chi_apply, composition_check, expansion, phi_star, phi_table, t0_bracket, FormalDiagramSum,
};
use skeindef::surface::{normalize_torus_class, SurfaceSpec};

#[test]
fn disk_braids_expand() {
    let d = disk_braid(3, &[1, -2, 1, 2]).unwrap();
    assert_eq!(d.surface(), SurfaceSpec::Disk(6));
    for k in 0..=4 {
        assert_eq!(expansion(&d, k).unwrap(), bracket_order(&d, k).unwrap(), "order {k}");
    }
}

#[test]
fn file_round_trip_keeps_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let d = superpose(&torus_multicurve(2, 1, 1).unwrap(), &torus_multicurve(1, 1, -1).unwrap(), ProductMode::Strong)
        .unwrap();
    write_diagram(&path, &d).unwrap();
    let back = read_diagram(&path).unwrap();
    assert_eq!(bracket_order(&back, 2).unwrap(), bracket_order(&d, 2).unwrap());
}

#[test]
fn projections_ignore_crossing_signs() {
    let d = from_braid(3, &[1, 1, -2, 1]).unwrap();
    let m = tau(&d);
    for j in 0..=3 {
        let a = phi_star(phi_table(j), &FormalDiagramSum::from_diagram(d.clone())).unwrap();
        let b = phi_star(phi_table(j), &FormalDiagramSum::from_diagram(m.clone())).unwrap();
        assert_eq!(a, b, "phi_{j}");
    }
    assert_eq!(phi_star(phi0, &FormalDiagramSum::from_diagram(d.clone())).unwrap(), t0_bracket(&d).unwrap());
}

#[test]
fn first_order_operator_squared_on_trefoil() {
    let d = from_braid(2, &[1, 1, 1]).unwrap();
    let p = &PolyZW::w() - &PolyZW::z();
    let r = composition_check(&p, &p, &d).unwrap();
    // each 2-subset is reached by two ordered splits, so the composite doubles
    // the off-diagonal weights of the square
    assert!(!r.passed());
    let once = chi_apply(&p, &d).unwrap();
    assert_eq!(once.terms().count(), 6);
}

#[test]
fn geodesic_stack_has_no_contractible_state() {
    let d = superpose(&torus_multicurve(2, 1, 0).unwrap(), &torus_multicurve(1, 0, 1).unwrap(), ProductMode::Strong)
        .unwrap();
    let ids: Vec<_> = d.crossings().iter().copied().collect();
    assert_eq!(ids.len(), 2);
    for mask in 0..4 {
        let r = resolve(&d, &KState::from_mask(&ids, mask)).unwrap();
        assert_eq!(r.mu, 0, "state {mask}");
    }
    let phi1 = phi_star(phi_table(1), &FormalDiagramSum::from_diagram(d)).unwrap();
    assert!(phi1.is_zero());
}

#[test]
fn star_product_to_fourth_order() {
    let (a, b) = (normalize_torus_class(1, 0), normalize_torus_class(0, 1));
    assert!(hermitian_check(SurfaceSpec::Torus, &a, &b, 4).unwrap().passed());
    let s = star(SurfaceSpec::Torus, &a, &b, 4).unwrap();
    assert_eq!(s.lambda(0).get(&normalize_torus_class(1, 1)), Some(&int(-1)));
}
