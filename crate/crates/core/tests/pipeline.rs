use twdr_core::arith::{parse_polynomial, MonomialOrder};
use twdr_core::brieskorn::connection_matrix;
use twdr_core::milnor::JacobianContext;
use twdr_core::oracle::select_oracle;
use twdr_core::turrittin::{datum_equal, extract_monodromy};

fn run(f: &str, n: usize) {
    let ctx = JacobianContext::new(parse_polynomial(f, n).unwrap(), &MonomialOrder::degrevlex(n)).unwrap();
    let b = connection_matrix(&ctx).unwrap();
    let e = extract_monodromy(&b, None, false).unwrap();
    let o = select_oracle(&ctx).unwrap();
    assert!(datum_equal(&e.datum, &o.datum), "{f}: {:?} vs {:?}", e.datum, o.datum);
    assert!(e.certificates_ok(), "{f}");
    assert_eq!(e.datum.total_rank(), ctx.milnor_number());
}

#[test]
fn quasi_homogeneous_pairs() {
    for a in 2..=5 {
        for b in 2..=5 {
            run(&format!("x^{a}+y^{b}"), 2);
        }
    }
}

#[test]
fn one_variable_powers() {
    for k in 2..=7 {
        run(&format!("x^{k}"), 1);
    }
}

#[test]
fn morse_cases() {
    run("x^3-3*x", 1);
    run("x^3-3*x+y^2", 2);
    run("x^2+y^2+z^2", 3);
    run("x^3-2*x", 1);
    run("x+x^2*y", 2);
}
