//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line.  All comparisons are exact; there are no tolerances.
//! (Criterion 10, the CLI contract, lives in the front-end crate.)

use betacalc_core::dsw::{beta, dsw_bracket_image, idempotent_pair, image_model};
use betacalc_core::lie::{jacobi_check, left_normed, lyndon_words, witt_count, BracketTree};
use betacalc_core::linalg::Mat;
use betacalc_core::moore::{
    b_recursive, b_sequence, compare_b_models, corollary2_closed_form, moore_retraction_dim,
    residue_class, z8_table, CellComplexSpec,
};
use betacalc_core::perm::GroupRingElement;
use betacalc_core::scalar::{LocalRational, Ring};
use betacalc_core::splitting::{verify_eq2, verify_prop3, TwoCell};
use betacalc_core::tensor::Generator;

fn verdict(number: u32, label: &str, pass: bool) {
    println!(
        "ACCEPTANCE {number} ({label}): {}",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {number} failed");
}

fn letters(n: usize) -> Vec<Generator> {
    (1..=n)
        .map(|i| Generator::new(&format!("x{i}"), 1).unwrap())
        .collect()
}

#[test]
fn criterion_1_quasi_idempotency() {
    let mut pass = true;
    for n in 2..=9usize {
        let b = beta(n);
        let square = b.convolve(&b).unwrap();
        pass &= square == b.scale(LocalRational::integer(n as i64));
    }
    verdict(1, "beta_n * beta_n = n beta_n exactly, 2 <= n <= 9", pass);
}

#[test]
fn criterion_2_bracket_property() {
    let mut pass = true;
    for n in 2..=7usize {
        let xs = letters(n);
        for ring in [Ring::Z2Local, Ring::F2] {
            let got = dsw_bracket_image(&xs, ring).unwrap();
            let want = left_normed(&xs).unwrap().expand(ring).suspend().unwrap();
            pass &= got == want;
        }
    }
    verdict(
        2,
        "beta_n acts as the left-normed bracket, 2 <= n <= 7, both rings",
        pass,
    );
}

#[test]
fn criterion_3_idempotent_splitting() {
    let mut pass = true;
    for n in [3usize, 5, 7, 9] {
        let pair = idempotent_pair(n).unwrap();
        let (e, c) = (&pair.e, &pair.complement);
        pass &= e.convolve(e).unwrap() == *e;
        pass &= c.convolve(c).unwrap() == *c;
        pass &= e.convolve(c).unwrap().is_zero();
        pass &= c.convolve(e).unwrap().is_zero();
        pass &= e.add(c).unwrap() == GroupRingElement::identity(n);
    }
    let gens = vec![
        Generator::new("u", 1).unwrap(),
        Generator::new("v", 2).unwrap(),
    ];
    for n in [3usize, 5, 7] {
        for ring in [Ring::Z2Local, Ring::F2] {
            let model = image_model(n, &gens, ring).unwrap();
            let ip = model.inclusion.mul(&model.projection).unwrap();
            let pi = model.projection.mul(&model.inclusion).unwrap();
            let (ip, pi, e_mat) = if ring == Ring::F2 {
                (
                    ip.reduce_mod2(),
                    pi.reduce_mod2(),
                    model.e_matrix.reduce_mod2(),
                )
            } else {
                (ip, pi, model.e_matrix.clone())
            };
            pass &= ip == e_mat && pi == Mat::identity(model.rank());
        }
    }
    verdict(
        3,
        "orthogonal idempotents odd n <= 9; i.p = e and p.i = id at n in {3,5,7}",
        pass,
    );
}

#[test]
fn criterion_4_rank_law() {
    let gens = vec![
        Generator::new("u", 1).unwrap(),
        Generator::new("v", 2).unwrap(),
    ];
    let expected = [(3usize, 2usize), (5, 6), (7, 18), (9, 56)];
    let mut pass = true;
    for (n, rank) in expected {
        let model = image_model(n, &gens, Ring::F2).unwrap();
        pass &= model.rank() == rank;
        // independent oracles: the Witt formula and a direct Lyndon count
        pass &= witt_count(2, n as u64) as usize == rank;
        pass &= lyndon_words(2, n).len() == rank;
    }
    verdict(
        4,
        "e_n-image rank over F_2 equals the necklace count: 2, 6, 18, 56",
        pass,
    );
}

#[test]
fn criterion_5_eq2_reproduction() {
    let mut pass = true;
    for (lo, hi) in [(1u32, 2u32), (2, 3), (3, 5)] {
        let cell = TwoCell::from_degrees(lo, hi).unwrap();
        for k in 1..=6usize {
            pass &= verify_eq2(k, &cell).unwrap().pass();
        }
    }
    verdict(
        5,
        "phi_k lands on ad^k([u,v]) and varphi_k inverts it, k <= 6, three degree pairs",
        pass,
    );
}

#[test]
fn criterion_6_prop3_reproduction() {
    let degree_pool = [(1u32, 2u32), (2, 3), (3, 5), (1, 4), (2, 5)];
    let mut pass = true;
    for n in 1..=5usize {
        let cells: Vec<TwoCell> = (0..n)
            .map(|i| {
                let (lo, hi) = degree_pool[i];
                TwoCell::from_degrees_indexed(i + 1, lo, hi).unwrap()
            })
            .collect();
        pass &= verify_prop3(&cells).unwrap().pass();
    }
    verdict(
        6,
        "bar_p . theta retracts the included generators for 1..=5 mixed factors",
        pass,
    );
}

/// Small deterministic linear congruential generator; enough to vary the
/// tree shapes without pulling in an RNG dependency for one test.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_tree(rng: &mut Lcg, leaves: usize, pool: &[Generator]) -> BracketTree {
    if leaves == 1 {
        let g = pool[rng.below(pool.len() as u64) as usize].clone();
        return BracketTree::leaf(g);
    }
    let left = 1 + rng.below(leaves as u64 - 1) as usize;
    BracketTree::bracket(
        random_tree(rng, left, pool),
        random_tree(rng, leaves - left, pool),
    )
}

#[test]
fn criterion_7_jacobi() {
    let pool = vec![
        Generator::new("x", 1).unwrap(),
        Generator::new("y", 2).unwrap(),
        Generator::new("z", 3).unwrap(),
    ];
    let mut rng = Lcg(0x5eed_2026);
    let mut pass = true;
    for _ in 0..1000 {
        // one or two leaves per argument, so each Jacobi summand has at
        // most six leaves
        let trees: Vec<BracketTree> = (0..3)
            .map(|_| {
                let leaves = 1 + rng.below(2) as usize;
                random_tree(&mut rng, leaves, &pool)
            })
            .collect();
        for ring in [Ring::Z2Local, Ring::F2] {
            pass &= jacobi_check(&trees[0], &trees[1], &trees[2], ring);
        }
    }
    verdict(7, "Jacobi sum vanishes for 1000 random triples, both rings", pass);
}

#[test]
fn criterion_8_corollary_2_tables() {
    let mut pass = true;
    for m in 4..=7i64 {
        let case = m - 4;
        let table = z8_table(m, 100).unwrap();
        for row in &table.rows {
            let in_class = row.k % 4 == residue_class(m);
            let threshold = row.retract_dim % 2 == 0 && row.retract_dim / 2 % 2 == 1 && row.retract_dim / 2 >= 5;
            pass &= row.degree.is_some() == (in_class && threshold);
            if let Some(degree) = row.degree {
                let (dim, want) = corollary2_closed_form(case, 1, row.k).unwrap();
                pass &= row.retract_dim == dim && degree == want;
            }
        }
    }
    // the headline cell: P^5(2), k = 3, summand in degree 50 = 56*1 - 6
    let headline = z8_table(5, 3).unwrap();
    pass &= headline.rows[3].degree == Some(50);
    pass &= moore_retraction_dim(5, 3).unwrap() == 26;
    verdict(
        8,
        "summand tables match the closed forms and residue classes, k <= 100",
        pass,
    );
}

#[test]
fn criterion_9_b_sequence_consistency() {
    let mut pass = true;
    for &(lo, hi) in &[(1i64, 2i64), (2, 3), (4, 7)] {
        let spec = CellComplexSpec::new(vec![(lo, hi)]).unwrap();
        for k in 0..=10u32 {
            pass &= b_sequence(&spec, k) == b_recursive(2, lo + hi, k).unwrap();
        }
    }
    // the two-factor discrepancy must be reported, not suppressed
    let double = CellComplexSpec::new(vec![(1, 2), (1, 2)]).unwrap();
    let cmp = compare_b_models(&double, 4).unwrap();
    pass &= cmp.mismatch;
    pass &= cmp.rows[1].b_sum == 6 && cmp.rows[1].b_rec == 12;
    verdict(
        9,
        "b-sequence matches the recursion for one factor; the multi-factor mismatch is reported",
        pass,
    );
}
