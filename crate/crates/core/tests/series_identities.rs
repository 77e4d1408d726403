use secondary::d0::{dual_coproduct, D0DualMonomial};
use secondary::milnor::ExpSeq;
use secondary::series::{series_decompose, universal_series, TestRing};

const LEN: usize = 40;

#[test]
fn composition_reproduces_generator_coproducts() {
    let f = universal_series(0, LEN);
    let g = universal_series(1, LEN);
    let h = f.compose(&g);
    let mut gens = vec![];
    for n in 1..=5 {
        if 1 << n < LEN {
            gens.push((1usize << n, D0DualMonomial::Plain(ExpSeq::delta(n))));
        }
    }
    for l in 1..=5 {
        for k in 0..l {
            let p = (1usize << k) + (1usize << l);
            if p < LEN {
                gens.push((p, D0DualMonomial::Two(k, l, ExpSeq::empty())));
            }
        }
    }
    for (p, m) in gens {
        let mut want = TestRing::zero();
        for ((m1, m2), c) in dual_coproduct(&m).iter() {
            let term = TestRing::evaluate_monomial(m1, 1).mul(&TestRing::evaluate_monomial(m2, 0));
            want = want.add(&term.scale(*c));
        }
        assert_eq!(h.coeff(p), want, "x^{p} for {m:?}");
    }
}

#[test]
fn theta_composition_identity() {
    let f = universal_series(0, LEN);
    let g = universal_series(1, LEN);
    let h = f.compose(&g);
    let (df, dg, dh) = (
        series_decompose(&f).unwrap(),
        series_decompose(&g).unwrap(),
        series_decompose(&h).unwrap(),
    );
    let lhs = dh.theta.at_square(LEN);
    let g_sq = g.mul(&g);
    let rhs = df
        .theta
        .compose(&g_sq)
        .add(&dg.theta.at_square(LEN))
        .add(&g.bar().scale(&df.xi1.scale(2)));
    let n = rhs.len().min(lhs.len());
    assert!(n >= LEN / 2);
    assert_eq!(lhs.truncate(n), rhs.truncate(n));
    assert_eq!(h.bar(), f.bar().compose(&g).add(&g.bar()));
}
