mod common;

use regflow::space::{RegularSpace, SpaceMode, TuVerdict};

#[test]
fn r10_is_totally_unimodular() {
    assert!(matches!(
        common::r10().verify_tu(8).unwrap(),
        TuVerdict::Unimodular
    ));
}

#[test]
fn r10_circuits_are_primitive_in_both_modes() {
    for mode in [SpaceMode::Kernel, SpaceMode::Rowspace] {
        let space = RegularSpace::build(common::r10(), mode);
        assert_eq!(space.dimension(), 5);
        let circuits = space.circuits().unwrap();
        assert!(!circuits.is_empty());
        for c in circuits {
            assert!(space.contains_signed(c));
        }
    }
}
