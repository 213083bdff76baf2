use proptest::prelude::*;

use excedance::algebra::gamma::{gamma_collect, gamma_expand};
use excedance::bijections::{phi, phi_fv, psi, psi_fv};
use excedance::paths::{HistoryKind, LaguerreHistory};
use excedance::stats::{cyclic_stats, des, exc, fix, inv, nest_cros, vincular};
use excedance::{Permutation, StatExpr};
use num_bigint::BigInt;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

proptest! {
    #[test]
    fn inversions_split_into_arcs(p in permutation(12)) {
        let r = nest_cros(&p);
        prop_assert_eq!(inv(&p), exc(&p) + 2 * r.nest + r.cros);
    }

    #[test]
    fn phi_carries_descents_and_vincular_counts(p in permutation(10)) {
        let t = phi(&p);
        prop_assert_eq!(t.len(), p.len());
        prop_assert_eq!(des(&p), p.len() - exc(&t) - fix(&t));
        prop_assert_eq!(vincular(&p).p2_31, nest_cros(&t).nest_i);
        let c = cyclic_stats(&t);
        prop_assert_eq!(c.cpk + c.cval + c.cda + c.cdd + c.fix, p.len());
    }

    #[test]
    fn psi_is_a_permutation_of_the_same_size(p in permutation(10)) {
        let t = psi(&p);
        prop_assert_eq!(t.len(), p.len());
        prop_assert_eq!(Permutation::new(t.word()).unwrap(), t);
    }

    #[test]
    fn histories_print_and_parse_back(p in permutation(9)) {
        let h = psi_fv(&p).unwrap();
        prop_assert_eq!(LaguerreHistory::parse(&h.to_string(), HistoryKind::Full).unwrap(), h);
        let g = phi_fv(&p).unwrap();
        prop_assert!(g.is_valid(HistoryKind::Restricted));
        prop_assert_eq!(LaguerreHistory::parse(&g.to_string(), HistoryKind::Restricted).unwrap(), g);
    }

    #[test]
    fn involutions(p in permutation(12)) {
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        prop_assert_eq!(p.reverse_complement().reverse_complement(), p.clone());
        prop_assert_eq!(p.iota(true).unwrap().iota_inverse(), p);
    }

    #[test]
    fn gamma_basis_round_trip(m in 0usize..12, seed in prop::collection::vec(-50i64..50, 7)) {
        let gamma: Vec<BigInt> = seed.into_iter().take(m / 2 + 1).map(BigInt::from).collect();
        let p = gamma_collect(&gamma, "t", m);
        prop_assert_eq!(gamma_expand(&p, "t", m).unwrap(), gamma);
    }
}

#[test]
fn stat_expressions_round_trip_through_text() {
    for text in ["des", "2-31", "lda-fmax", "cda*+fix*", "cyc*-fix*-1", "asc+1", "2*31-2-2+2-13", "inv-exc"] {
        let e: StatExpr = text.parse().unwrap();
        let again: StatExpr = e.to_string().parse().unwrap();
        assert_eq!(again, e, "{text}");
    }
}
