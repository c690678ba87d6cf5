use brumer_forge::annihilate::MockClassModule;
use brumer_forge::exactnum::{Cyclotomic, CyclotomicLiteral};
use brumer_forge::stickelberger::{assemble_theta_from_l, integrality_check, ArithmeticInput, EpsVariant};
use num_bigint::BigInt;
use proptest::prelude::*;

const D12: &str = include_str!("../examples/d12_paper.json");
const MOCK: &str = include_str!("../examples/d12_mock.json");

fn s_inf() -> ArithmeticInput {
    ArithmeticInput::from_json(D12).unwrap().with_s(&[]).unwrap()
}

#[test]
fn twelve_theta_annihilates_the_mock_module() {
    let inp = s_inf();
    let th = assemble_theta_from_l(&inp, EpsVariant::Limit).unwrap();
    let r = integrality_check(&th.theta);
    assert_eq!(r.denominator, BigInt::from(12));
    let m = MockClassModule::from_json(MOCK).unwrap();
    let twelve = th.to_group_ring().scale(&Cyclotomic::from_int(12));
    assert!(m.annihilates(&twelve).unwrap().annihilates);
    // denominator 12 is not invertible mod 48
    assert!(m.annihilates(&th.to_group_ring()).is_err());
}

#[test]
fn literal_eps_variant_agrees_on_unramified_data() {
    let inp = s_inf();
    let a = assemble_theta_from_l(&inp, EpsVariant::Limit).unwrap();
    let b = assemble_theta_from_l(&inp, EpsVariant::LiteralNp).unwrap();
    assert_eq!(a.theta, b.theta);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn assembly_is_linear_in_l_values(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let base = s_inf();
        let mut raw = base.raw.clone();
        for (name, v) in [("χ2", a), ("χ4", b), ("χ6", c)] {
            raw.l_values.insert(name.into(), CyclotomicLiteral::from_cyclotomic(&Cyclotomic::from_int(v)));
        }
        raw.abelian.clear();
        let inp = ArithmeticInput::with_table(raw, base.table.clone()).unwrap();
        let th = assemble_theta_from_l(&inp, EpsVariant::Limit).unwrap();
        let t = &inp.table;
        for (name, v) in [("χ2", a), ("χ4", b), ("χ6", c)] {
            let i = t.index_by_name(name).unwrap();
            prop_assert_eq!(th.theta.component(i), &Cyclotomic::from_int(v));
        }
        prop_assert!(integrality_check(&th.theta).in_maximal_centre);
    }
}
