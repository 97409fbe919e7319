//! End-to-end: serialized field → decomposition → solver → residual checks.

use conecalc::decomposition::decompose;
use conecalc::dynamics::{kg_solve, PoleRegularization};
use conecalc::fourier::{to_momentum, to_position};
use conecalc::verify::{check_boundary, check_coupled_condition, check_source_condition};
use conecalc::{io, Lattice, MomentumLatticeField, Sign};

fn field() -> MomentumLatticeField {
    let lat = Lattice::new([8, 8, 4, 4], [0.3, 0.25, 0.5, 0.5], 1.2).unwrap();
    MomentumLatticeField::random(lat, 2, 31)
}

#[test]
fn serialized_field_survives_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.json");
    io::write_json_file(&path, &field()).unwrap();
    let f = to_momentum(&to_position(&io::read_json_file(&path).unwrap()));
    let d = decompose(&f);
    assert!(d.support_violation().is_none());
    let x5s = [-1.0, 0.0, 0.7, 2.5];
    assert!(check_coupled_condition(&d, &x5s, 1e-10).unwrap().pass);
    for sign in [Sign::Plus, Sign::Minus] {
        assert_eq!(check_boundary(&d, sign, 0.0).unwrap().linf, 0.0);
    }
}

#[test]
fn source_condition_holds_only_at_equal_masses() {
    // At m₊ = m₋ the combination j − m²φ is linear in doubled fields, so it
    // is doubled itself and the source condition holds.
    let j = field();
    let m2 = 0.3;
    let reg = PoleRegularization::principal_value(1e-6, 1e-3).unwrap();
    let phi = kg_solve(&j, m2, &reg);
    let r = check_source_condition(&decompose(&j), &decompose(&phi), m2, m2, &[0.0, 0.4, -1.3], 1e-10).unwrap();
    assert!(r.pass, "{r:?}");
    // Unequal masses break it by |m₊² − m₋²|·|q²φ|.
    let r = check_source_condition(&decompose(&j), &decompose(&phi), m2, m2 + 0.1, &[0.4], 1e-10).unwrap();
    assert!(!r.pass);
}
