use std::time::Instant;

use betacalc_core::dsw::{dsw_bracket_image, idempotent_pair, image_model, verify_square};
use betacalc_core::lie::{left_normed, witt_count};
use betacalc_core::moore::{
    compare_b_models, stable_range, z8_table, CellComplexSpec,
};
use betacalc_core::perm::GroupRingElement;
use betacalc_core::scalar::Ring;
use betacalc_core::splitting::{verify_eq2, verify_prop3, TwoCell};
use betacalc_core::tensor::Generator;

use crate::config::RunConfig;
use crate::report::{CaseReport, RunReport};
use crate::CliError;

/// Ambient-dimension cap for the splitting verifier: (2k+1)-letter words
/// over two generators, refused beyond 2^24 words.
const AMBIENT_WORD_CAP_LOG2: i64 = 24;

fn distinct_letters(n: usize) -> Vec<Generator> {
    (1..=n)
        .map(|i| Generator::new(&format!("x{i}"), 1).expect("degree 1"))
        .collect()
}

fn core_err(e: betacalc_core::Error) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn cmd_verify_dsw(config: RunConfig) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let max_n = config
        .max_n
        .ok_or_else(|| CliError::Usage("verify dsw needs --max-n".into()))?;
    if !(2..=12).contains(&max_n) {
        return Err(CliError::Usage(format!(
            "--max-n must lie in 2..=12, got {max_n}"
        )));
    }

    let mut cases = Vec::new();

    for n in 2..=max_n {
        let report = verify_square(n);
        cases.push(
            CaseReport::new(
                format!("quasi-idempotency-n{n}"),
                format!("beta_{n} * beta_{n} = {n} beta_{n} in Z_(2)(S_{n})"),
                report.holds,
            )
            .with_detail(&report),
        );
    }

    for n in 2..=max_n.min(7) {
        let letters = distinct_letters(n);
        let mut pass = true;
        for ring in [Ring::Z2Local, Ring::F2] {
            let got = dsw_bracket_image(&letters, ring).map_err(core_err)?;
            let want = left_normed(&letters)
                .map_err(core_err)?
                .expand(ring)
                .suspend()
                .map_err(core_err)?;
            pass &= got == want;
        }
        cases.push(CaseReport::new(
            format!("bracket-property-n{n}"),
            format!(
                "beta_{n}(i (x) x_1 (x) ... (x) x_{n}) = [[...[x_1,x_2],...],x_{n}] over Z_(2) and F_2"
            ),
            pass,
        ));
    }

    for n in (3..=max_n).step_by(2) {
        let pair = idempotent_pair(n).map_err(core_err)?;
        let e = &pair.e;
        let c = &pair.complement;
        let ee = e.convolve(e).map_err(core_err)?;
        let cc = c.convolve(c).map_err(core_err)?;
        let ec = e.convolve(c).map_err(core_err)?;
        let sum = e.add(c).map_err(core_err)?;
        let pass = ee == *e && cc == *c && ec.is_zero() && sum == GroupRingElement::identity(n);
        cases.push(CaseReport::new(
            format!("orthogonal-idempotents-n{n}"),
            format!("e_{n} = beta_{n}/{n} and 1 - e_{n} are orthogonal idempotents summing to 1"),
            pass,
        ));
    }

    let gens = vec![
        Generator::new("u", 1).expect("degree"),
        Generator::new("v", 2).expect("degree"),
    ];
    for n in (3..=max_n.min(7)).step_by(2) {
        // a model that fails to build (the idempotent no longer fixes the
        // bracket basis) is a failing case, not an abort
        let checked = (|| -> betacalc_core::Result<(bool, usize)> {
            let mut pass = true;
            let mut rank = 0;
            for ring in [Ring::Z2Local, Ring::F2] {
                let model = image_model(n, &gens, ring)?;
                rank = model.rank();
                let ip = model.inclusion.mul(&model.projection)?;
                let pi = model.projection.mul(&model.inclusion)?;
                let (ip, pi, e_mat) = if ring == Ring::F2 {
                    (ip.reduce_mod2(), pi.reduce_mod2(), model.e_matrix.reduce_mod2())
                } else {
                    (ip, pi, model.e_matrix.clone())
                };
                pass &= ip == e_mat
                    && pi == betacalc_core::linalg::Mat::identity(model.rank());
            }
            Ok((pass, rank))
        })();
        cases.push(match checked {
            Ok((pass, rank)) => CaseReport::new(
                format!("factorization-n{n}"),
                format!("i . p = matrix(e_{n}) and p . i = id on the rank-{rank} image, dim V = 2"),
                pass,
            ),
            Err(e) => CaseReport::new(
                format!("factorization-n{n}"),
                format!("image model could not be built: {e}"),
                false,
            ),
        });
    }

    for n in (3..=max_n).step_by(2) {
        if ![3, 5, 7, 9].contains(&n) {
            continue;
        }
        let expected = witt_count(2, n as u64) as usize;
        cases.push(match image_model(n, &gens, Ring::F2) {
            Ok(model) => CaseReport::new(
                format!("rank-law-n{n}"),
                format!("rank of the e_{n}-image over F_2 equals the necklace count {expected}"),
                model.rank() == expected,
            )
            .with_detail(serde_json::json!({
                "rank": model.rank(),
                "necklace_count": expected,
            })),
            Err(e) => CaseReport::new(
                format!("rank-law-n{n}"),
                format!("image model could not be built: {e}"),
                false,
            ),
        });
    }

    Ok(RunReport::new("verify dsw", config, cases, started))
}

pub fn cmd_verify_splitting(config: RunConfig) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let k_max = config
        .k_max
        .ok_or_else(|| CliError::Usage("verify splitting needs --k-max".into()))?;
    if k_max < 1 {
        return Err(CliError::Usage(format!("--k-max must be >= 1, got {k_max}")));
    }
    if 2 * k_max + 1 > AMBIENT_WORD_CAP_LOG2 {
        return Err(CliError::Guard(format!(
            "k_max = {k_max} needs 2^{} ambient words, beyond the 2^{AMBIENT_WORD_CAP_LOG2} cap; \
             rerun with --k-max at most {}",
            2 * k_max + 1,
            (AMBIENT_WORD_CAP_LOG2 - 1) / 2
        )));
    }
    let degrees = config.degrees.clone().unwrap_or_else(|| vec![(1, 2)]);
    let factors = config.factors.unwrap_or(1);
    if factors < 1 {
        return Err(CliError::Usage(format!(
            "--factors must be >= 1, got {factors}"
        )));
    }

    let mut cases = Vec::new();
    for &(lo, hi) in &degrees {
        let cell = TwoCell::from_degrees(lo, hi).map_err(|e| CliError::Usage(e.to_string()))?;
        for k in 1..=k_max {
            let report = verify_eq2(k as usize, &cell).map_err(core_err)?;
            cases.push(
                CaseReport::new(
                    format!("eq2-k{k}-deg{lo}-{hi}"),
                    format!(
                        "phi_{k} lands on ad^{k}([u,v]) and varphi_{k} . phi_{k} = id, degrees ({lo},{hi})"
                    ),
                    report.pass(),
                )
                .with_detail(&report),
            );
        }
    }

    for n in 1..=factors {
        let cells: Vec<TwoCell> = (0..n)
            .map(|i| {
                let (lo, hi) = degrees[i % degrees.len()];
                TwoCell::from_degrees_indexed(i + 1, lo, hi)
                    .map_err(|e| CliError::Usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let report = verify_prop3(&cells).map_err(core_err)?;
        cases.push(
            CaseReport::new(
                format!("prop3-n{n}"),
                format!("bar_p . theta retracts the included generators, {n} smash factor(s)"),
                report.pass(),
            )
            .with_detail(&report),
        );
    }

    Ok(RunReport::new("verify splitting", config, cases, started))
}

pub fn cmd_moore(config: RunConfig) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let m = config
        .dim
        .ok_or_else(|| CliError::Usage("moore table needs --dim".into()))?;
    if m < 3 {
        return Err(CliError::Usage(format!(
            "--dim must be >= 3 (P^{m}(2) is not simply connected)"
        )));
    }
    let k_max = config.k_max.unwrap_or(20);
    if k_max < 0 {
        return Err(CliError::Usage(format!("--k-max must be >= 0, got {k_max}")));
    }

    let table = z8_table(m, k_max).map_err(core_err)?;
    let mut cases = Vec::new();
    for row in &table.rows {
        let description = match row.degree {
            Some(d) => format!(
                "P^{m}(2): retract P^{}(2) gives a Z/8Z summand in degree {d}",
                row.retract_dim
            ),
            None => format!(
                "P^{m}(2): retract P^{}(2), no summand ({})",
                row.retract_dim, row.reason
            ),
        };
        cases.push(
            CaseReport::new(format!("k={}", row.k), description, true).with_detail(row),
        );
    }
    if let Some(note) = &table.note {
        cases.push(CaseReport::new("family-note", note.clone(), true));
    }

    Ok(RunReport::new("moore table", config, cases, started))
}

pub fn cmd_stable_range(config: RunConfig) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let j = config
        .j
        .ok_or_else(|| CliError::Usage("stable-range needs --j".into()))?;
    let cells = config
        .cells
        .clone()
        .ok_or_else(|| CliError::Usage("stable-range needs --cells".into()))?;
    let spec = CellComplexSpec::new(cells).map_err(|e| CliError::Usage(e.to_string()))?;
    if j < 1 {
        return Err(CliError::Usage(format!("--j must be >= 1, got {j}")));
    }

    let row = stable_range(j, &spec).map_err(core_err)?;
    let comparison = compare_b_models(&spec, row.k.max(4)).map_err(core_err)?;

    let mut cases = vec![CaseReport::new(
        format!("j={j}"),
        format!(
            "pi^s_{j} retracts off pi_{}; minimal k = {} with b_k = {}",
            row.unstable_degree, row.k, row.b
        ),
        true,
    )
    .with_detail(&row)];
    let description = if comparison.mismatch {
        "the per-factor sum formula and the total-homology recursion for b_k disagree \
         for several factors; both are reported"
    } else {
        "the per-factor sum formula and the total-homology recursion for b_k agree"
    };
    cases.push(CaseReport::new("b-models", description, true).with_detail(&comparison));

    Ok(RunReport::new("stable-range", config, cases, started))
}
