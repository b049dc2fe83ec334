//! Small hand-built complexes that fail exactly one structural check.

use num_bigint::BigInt;

use crate::complex::{BasedComplex, ComplexBuilder};
use crate::name::GeneratorName;

fn n(s: &str) -> GeneratorName {
    GeneratorName::sym(s)
}

fn k(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Two parallel edges `e: x → y` and `f: y → x`; the preorder has the
/// cycle `x ≤ e ≤ y ≤ f ≤ x`.
pub fn loop_fixture() -> BasedComplex {
    let mut b = ComplexBuilder::new();
    b.add_generator(0, n("x")).add_generator(0, n("y")).add_generator(1, n("e")).add_generator(1, n("f"));
    b.set_augmentation(n("x"), k(1)).set_augmentation(n("y"), k(1));
    b.set_boundary(n("e"), vec![(n("y"), k(1)), (n("x"), k(-1))]);
    b.set_boundary(n("f"), vec![(n("x"), k(1)), (n("y"), k(-1))]);
    b.build().expect("fixture is well formed")
}

/// A triangle whose 2-cell boundary misses the long edge, so `d² ≠ 0`.
pub fn d_squared_fixture() -> BasedComplex {
    let mut b = ComplexBuilder::new();
    for v in ["x", "y", "z"] {
        b.add_generator(0, n(v)).set_augmentation(n(v), k(1));
    }
    b.add_generator(1, n("f")).add_generator(1, n("g")).add_generator(1, n("h")).add_generator(2, n("t"));
    b.set_boundary(n("f"), vec![(n("y"), k(1)), (n("x"), k(-1))]);
    b.set_boundary(n("g"), vec![(n("z"), k(1)), (n("y"), k(-1))]);
    b.set_boundary(n("h"), vec![(n("z"), k(1)), (n("x"), k(-1))]);
    b.set_boundary(n("t"), vec![(n("f"), k(1)), (n("g"), k(1))]);
    b.build().expect("fixture is well formed")
}

/// An edge `e: x → y` with `ε(x) = 1`, `ε(y) = 2`.
pub fn augmentation_fixture() -> BasedComplex {
    let mut b = ComplexBuilder::new();
    b.add_generator(0, n("x")).add_generator(0, n("y")).add_generator(1, n("e"));
    b.set_augmentation(n("x"), k(1)).set_augmentation(n("y"), k(2));
    b.set_boundary(n("e"), vec![(n("y"), k(1)), (n("x"), k(-1))]);
    b.build().expect("fixture is well formed")
}

/// `d(e) = y + z - 2x`: a valid ADC whose edge has source `2x`, so its atom
/// has `ε(x⁻₀) = 2`.
pub fn non_unital_fixture() -> BasedComplex {
    let mut b = ComplexBuilder::new();
    for v in ["x", "y", "z"] {
        b.add_generator(0, n(v)).set_augmentation(n(v), k(1));
    }
    b.add_generator(1, n("e"));
    b.set_boundary(n("e"), vec![(n("y"), k(1)), (n("z"), k(1)), (n("x"), k(-2))]);
    b.build().expect("fixture is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_complex;
    use crate::report::Status;
    use crate::steiner::is_steiner;

    fn failing(r: &crate::report::CheckReport) -> Vec<&str> {
        r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect()
    }

    #[test]
    fn each_fixture_fails_one_check() {
        assert_eq!(failing(&validate_complex(&d_squared_fixture())), ["D2_ZERO"]);
        assert_eq!(failing(&validate_complex(&augmentation_fixture())), ["AUG_KILLS_D1"]);
        assert!(validate_complex(&non_unital_fixture()).passed);
        assert_eq!(failing(&is_steiner(&non_unital_fixture())), ["UNITAL"]);
        assert!(validate_complex(&loop_fixture()).passed);
        assert_eq!(failing(&is_steiner(&loop_fixture())), ["STRONGLY_LOOP_FREE"]);
    }
}
