//! Sweeps used to pin the empirical constants in the test suites.
//!
//! `cargo run --release -p soperator --example sweeps`

use soperator::analysis::{homogeneous_class_ratio, radial_p1_norm_exact};
use soperator::{CharTable, Exponent, Field};

fn odd_primes(limit: u32) -> Vec<u32> {
    (3..=limit)
        .filter(|&n| (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0))
        .collect()
}

fn main() {
    println!("radial l1 -> l^((d+1)/d) norm");
    for d in [2usize, 3] {
        let s = Exponent::Finite((d as f64 + 1.0) / d as f64);
        for q in odd_primes(31) {
            let v = radial_p1_norm_exact(&Field::of_order(q).unwrap(), d, s).unwrap();
            println!("  d={d} q={q:>2} {v:.12}");
        }
    }

    println!("osc_sum(n)/q, odd n");
    let orders = [
        3u32, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49,
    ];
    for n in [1u32, 3, 5, 7, 9] {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for &q in &orders {
            let r = CharTable::new(&Field::of_order(q).unwrap()).osc_sum(n) / q as f64;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        println!("  n={n} min={lo:.12} max={hi:.12}");
    }

    println!("homogeneous class, d=2, 50 samples, seed 0");
    for p in ["1", "4/3", "2", "4", "inf"] {
        let e: Exponent = p.parse().unwrap();
        let m = [3u32, 5, 7, 9, 11, 13]
            .iter()
            .map(|&q| homogeneous_class_ratio(&Field::of_order(q).unwrap(), 2, e, 50, 0).unwrap())
            .fold(0.0, f64::max);
        println!("  p={p:<4} max={m:.12}");
    }
}
