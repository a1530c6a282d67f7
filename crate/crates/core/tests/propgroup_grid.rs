use meanexp::propgroups::{
    b_power_of_two, gs_series, power_sum_check, reconstruct_series, zassenhaus_ranks, zassenhaus_ranks_log,
    GSGroupParams,
};

const N: usize = 64;

#[test]
fn product_round_trip_on_grid() {
    for (d, r) in [(4u64, 4u64), (5, 6), (6, 9)] {
        for p in [3u64, 5] {
            let params = GSGroupParams::new(d, r, p).unwrap();
            let series = gs_series(&params, N).unwrap();
            let ranks = zassenhaus_ranks(&series, p, N).unwrap();
            assert_eq!(reconstruct_series(&ranks, N), series, "d={d} r={r} p={p}");
            assert_eq!(zassenhaus_ranks_log(&params, N).unwrap(), ranks, "d={d} r={r} p={p}");
            for m in (1..=30).filter(|m| *m as u64 % p != 0) {
                assert!(power_sum_check(&params, m, &ranks).unwrap(), "m={m}");
            }
            for n in 1..=4u32 {
                assert_eq!(&b_power_of_two(&params, n).unwrap(), ranks.get(1 << n).unwrap());
            }
        }
    }
}

#[test]
fn ranks_are_nonnegative() {
    for (d, r, p) in [(3u64, 2u64, 2u64), (4, 3, 7), (2, 1, 3)] {
        let params = GSGroupParams::new(d, r, p).unwrap();
        let ranks = zassenhaus_ranks_log(&params, N).unwrap();
        assert!(ranks.b.iter().all(|b| b.sign() != num_bigint::Sign::Minus));
    }
}
