use num_rational::Rational64;
use painleve_qcurve::mpoly::MPoly;
use painleve_qcurve::openfe::integrate_W_to_F;
use painleve_qcurve::toprec::DEFAULT_MARGIN;
use painleve_qcurve::wkb::painleve_series;
use painleve_qcurve::{closed_F, compute_W, Cache, Rational, WCache};

fn permute(p: &MPoly<Rational>, perm: &[usize]) -> MPoly<Rational> {
    let mut out = MPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        out.add_term(perm.iter().map(|&i| e[i]).collect(), c.clone());
    }
    out
}

#[test]
fn tables_are_symmetric() {
    let cache = Cache::new();
    cache.ensure_euler(4).unwrap();
    for ((g, n), w) in cache.snapshot() {
        let full = w.expand();
        let n = n as usize;
        // a transposition and an n-cycle generate S_n
        let mut swap: Vec<usize> = (0..n).collect();
        if n >= 2 {
            swap.swap(0, 1);
        }
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        assert_eq!(permute(&full, &swap), full, "W_{{{g},{n}}}");
        assert_eq!(permute(&full, &cycle), full, "W_{{{g},{n}}}");
    }
}

#[test]
fn open_free_energies_round_trip() {
    let cache = Cache::new();
    cache.ensure_euler(5).unwrap();
    for ((g, n), w) in cache.snapshot() {
        let f = integrate_W_to_F(&w);
        assert_eq!(&f.to_w().unwrap(), w.as_ref(), "F_{{{g},{n}}}");
    }
}

#[test]
fn wider_truncation_changes_nothing() {
    let narrow = Cache::new();
    let wide = Cache::with_margin(DEFAULT_MARGIN + 4);
    narrow.ensure_euler(5).unwrap();
    wide.ensure_euler(5).unwrap();
    assert_eq!(narrow.snapshot(), wide.snapshot());
}

#[test]
fn machine_rationals_agree_with_big_rationals() {
    let small = WCache::<Rational64>::new();
    let big = Cache::new();
    for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1), (0, 5), (1, 3), (2, 2), (3, 1)] {
        let a = compute_W(g, n, &small).unwrap().to_string();
        let b = compute_W(g, n, &big).unwrap().to_string();
        assert_eq!(a, b, "W_{{{g},{n}}}");
    }
    for g in 0..=3 {
        assert_eq!(closed_F(g, &small).unwrap().to_string(), closed_F(g, &big).unwrap().to_string());
    }
    let ps = painleve_series::<Rational64>(3);
    let pb = painleve_series::<Rational>(3);
    for (a, b) in ps.sigma.iter().zip(&pb.sigma) {
        assert_eq!(a.to_string(), b.to_string());
    }
}
