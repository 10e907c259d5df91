use num_rational::Ratio;

use layerset::bcore::{self, HalfInt, Scalar};
use layerset::selfcheck::{self, production_b};

type Q = Ratio<i64>;

/// sign(0) = +1 instead of 0.
fn positive_zero_sign(v: Q) -> HalfInt {
    if v >= Ratio::from_integer(0) {
        HalfInt::ONE
    } else {
        HalfInt::NEG_ONE
    }
}

fn corrupted_sign_b(x: Q, y: Q) -> HalfInt {
    HalfInt::from_twice((positive_zero_sign(x + y).twice_value() - positive_zero_sign(x - y).twice_value()) / 2)
}

/// Full value instead of half on the border |x| = |y|.
fn corrupted_border_b(x: Q, y: Q) -> HalfInt {
    if x.abs_value() == y.abs_value() {
        bcore::sign(y)
    } else {
        bcore::b(x, y)
    }
}

#[test]
fn production_passes_every_suite() {
    for r in selfcheck::run_all(production_b, 7) {
        assert!(r.passed(), "{r}");
        assert!(r.cases > 0);
    }
}

#[test]
fn corrupted_sign_convention_is_caught() {
    let r = selfcheck::piecewise(corrupted_sign_b, 1);
    assert!(!r.passed());
    assert!(r.first_failure.is_some());
    assert!(!selfcheck::integer_table(corrupted_sign_b).passed());
    // any sign convention telescopes through the splitting identity
    assert!(selfcheck::splitting(corrupted_sign_b, 1).passed());
}

#[test]
fn corrupted_border_value_breaks_splitting() {
    let r = selfcheck::splitting(corrupted_border_b, 1);
    assert!(!r.passed(), "{r}");
    assert!(r.to_string().starts_with("FAIL splitting"));
    assert!(!selfcheck::piecewise(corrupted_border_b, 1).passed());
}
