//! Wall-clock comparison of the evaluation strategies on the degree-3
//! word-width corpus: the prepared fast path, plain Horner, and a
//! per-polynomial lookup table. Numbers are reported, never asserted.

use std::hint::black_box;
use std::time::Instant;

use intram::native64::{builtin_classes, eval64, horner64, prepare64};
use intram::polyeval::Poly;
use intram::rng::{RandomSourceExt, SplitMix64};
use intram::BigInt;

pub fn run(samples: usize, seed: u64) -> String {
    let class = builtin_classes()[5];
    let mut rng = SplitMix64::new(seed);

    // Random coefficient vectors within the class norm budget.
    let mut polys = Vec::with_capacity(samples);
    while polys.len() < samples {
        let mut coeffs = [0u64; 4];
        let mut budget = class.norm1();
        for c in coeffs.iter_mut() {
            *c = rng.below_u64(budget + 1);
            budget -= *c;
        }
        polys.push(coeffs);
    }

    let prepared: Vec<_> = polys
        .iter()
        .map(|coeffs| {
            let poly = Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
            prepare64(&poly, &class).expect("in-class polynomial")
        })
        .collect();
    let tables: Vec<Vec<u64>> = polys
        .iter()
        .map(|coeffs| (0..=class.domain()).map(|x| horner64(coeffs, x)).collect())
        .collect();

    let count = (samples as u64) * (class.domain() + 1);
    let mut out = String::from("class,method,count,ns_per_eval\n");

    let timed = |f: &mut dyn FnMut() -> u64| -> f64 {
        let start = Instant::now();
        let mut sink = 0u64;
        sink = sink.wrapping_add(f());
        black_box(sink);
        start.elapsed().as_nanos() as f64 / count as f64
    };

    let mut run_prepared = || {
        let mut acc = 0u64;
        for prep in &prepared {
            for x in 0..=class.domain() {
                acc = acc.wrapping_add(eval64(prep, x).unwrap());
            }
        }
        acc
    };
    let ns = timed(&mut run_prepared);
    out.push_str(&format!("6,prepared64,{count},{ns:.2}\n"));

    let mut run_horner = || {
        let mut acc = 0u64;
        for coeffs in &polys {
            for x in 0..=class.domain() {
                acc = acc.wrapping_add(horner64(coeffs, x));
            }
        }
        acc
    };
    let ns = timed(&mut run_horner);
    out.push_str(&format!("6,horner64,{count},{ns:.2}\n"));

    let mut run_table = || {
        let mut acc = 0u64;
        for table in &tables {
            for &v in table {
                acc = acc.wrapping_add(v);
            }
        }
        acc
    };
    let ns = timed(&mut run_table);
    out.push_str(&format!("6,table,{count},{ns:.2}\n"));

    out
}
