use num_traits::Zero;
use proptest::prelude::*;

use jackvk::asymptotics::{binomial_expand, binomial_reconstruct};
use jackvk::jack::JackEngine;
use jackvk::scalar::{q, qr};
use jackvk::shifted::{gen_g, gen_gstar, gstar_k, gstar_product_series, gstar_scaling_top, ShiftedEngine};
use jackvk::{Partition, Signature, Theta, Q};

fn theta_of(num: i64, den: i64) -> Theta {
    Theta::from_ratio(num, den).unwrap()
}

#[test]
fn vanishing_extends_beyond_the_interpolation_nodes() {
    for t in [theta_of(1, 2), theta_of(2, 1)] {
        let mut e = ShiftedEngine::new(t.clone());
        for mu in Partition::all_up_to(4, 3) {
            let f = e.pstar(&mu, 3).unwrap();
            for lam in Partition::all_up_to(7, 3) {
                if !lam.contains(&mu) {
                    assert!(f.eval_partition(&lam).unwrap().is_zero(), "θ={t} μ={mu} λ={lam}");
                }
            }
        }
    }
}

#[test]
fn pstar_is_stable_under_dropping_a_zero_variable() {
    let mut e = ShiftedEngine::new(theta_of(2, 3));
    for n in 1..=3 {
        for mu in Partition::all_up_to(4, n) {
            let big = e.pstar(&mu, n + 1).unwrap();
            assert_eq!(big.drop_last(), e.pstar(&mu, n).unwrap(), "n={n} μ={mu}");
        }
    }
}

#[test]
fn pstar_values_are_positive_on_containing_partitions() {
    // P*_μ(λ) for μ ⊆ λ is a positive multiple of a generalized binomial
    // coefficient, so it never vanishes inside the cone.
    let mut e = ShiftedEngine::new(theta_of(1, 3));
    for mu in Partition::all_up_to(3, 3) {
        let f = e.pstar(&mu, 3).unwrap();
        for lam in Partition::all_up_to(5, 3) {
            if lam.contains(&mu) {
                assert!(f.eval_partition(&lam).unwrap() > Q::zero(), "μ={mu} λ={lam}");
            }
        }
    }
}

fn small_partition_padded(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=4, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn small_theta() -> impl Strategy<Value = Theta> {
    (1i64..=5, 1i64..=5).prop_map(|(a, b)| theta_of(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generating_series_matches_product_formula(x in (1usize..=3).prop_flat_map(small_partition_padded), t in small_theta()) {
        let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
        prop_assert_eq!(gen_gstar(&xq, &t, 5).to_inv_u(), gstar_product_series(&x, &t, 5));
    }

    #[test]
    fn top_degree_of_gstar_is_g(x in prop::collection::vec((-6i64..=6, 1i64..=4), 1..=3), k in 1usize..=4, t in small_theta()) {
        let x: Vec<Q> = x.into_iter().map(|(a, b)| qr(a, b)).collect();
        let g = gen_g(&x, &t, k);
        prop_assert_eq!(gstar_scaling_top(k, &x, &t), g.coef(k));
    }

    #[test]
    fn first_gstar_is_theta_times_the_sum(x in prop::collection::vec(-5i64..=5, 1..=4), t in small_theta()) {
        let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
        let s: i64 = x.iter().sum();
        prop_assert_eq!(gstar_k(1, &xq, &t), t.value() * q(s));
    }

    #[test]
    fn binomial_expansion_rebuilds_phi(parts in prop::collection::vec(-2i64..=2, 1..=3), k in 1usize..=3, t in small_theta()) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lam = Signature::new(parts).unwrap();
        prop_assume!(k <= lam.len());
        let mut e = ShiftedEngine::new(t.clone());
        let rebuilt = binomial_reconstruct(&mut e, &lam, k).unwrap();
        prop_assert_eq!(rebuilt, JackEngine::new(t).phi_laurent(&lam, k).unwrap());
    }

    #[test]
    fn binomial_constant_term_is_one(parts in prop::collection::vec(-3i64..=3, 1..=4), t in small_theta()) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lam = Signature::new(parts).unwrap();
        let exp = binomial_expand(&mut ShiftedEngine::new(t), &lam, 1, 2).unwrap();
        prop_assert_eq!(exp.coefficients.get(&Partition::empty()), Some(&q(1)));
    }
}
