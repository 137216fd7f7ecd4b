//! SDPA sparse (`.dat-s`) export of the Fermat-Weber problem.
//!
//! SDPA reads the constraint as `Σ Fᵢxᵢ − F₀ ⪰ 0`, so the constant term of the
//! pencil enters with a flipped sign.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::FociConfig;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::pencil::build_planar_pencil;
use crate::rational::{self, Rational};

/// Largest `k` accepted by [`Formulation::Big`] (matrix size `2^k`).
pub const MAX_BIG_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// Minimize `d` over the single `2^k × 2^k` pencil block.
    Big,
    /// Minimize `Σ wᵢdᵢ` over `k` blocks `dᵢI + [[x−uᵢ, y−vᵢ], [y−vᵢ, uᵢ−x]] ⪰ 0`.
    Lifted,
}

struct Problem {
    objective: Vec<Rational>,
    block_sizes: Vec<usize>,
    /// `entries[var][block]`; `var = 0` is `F₀`.
    entries: Vec<Vec<Option<RatMatrix>>>,
}

pub fn sdpa_string(cfg: &FociConfig, formulation: Formulation) -> Result<String> {
    if !cfg.is_planar() {
        return Err(Error::Unsupported("SDP export is planar only".into()));
    }
    let problem = match formulation {
        Formulation::Big => big(cfg)?,
        Formulation::Lifted => lifted(cfg),
    };
    Ok(render(&problem))
}

pub fn export_sdp(cfg: &FociConfig, formulation: Formulation, path: &Path) -> Result<()> {
    let text = sdpa_string(cfg, formulation)?;
    std::fs::write(path, text)?;
    Ok(())
}

fn big(cfg: &FociConfig) -> Result<Problem> {
    if cfg.k() > MAX_BIG_K {
        return Err(Error::Budget(format!(
            "big formulation has size 2^{}; limit is 2^{MAX_BIG_K}, use the lifted formulation",
            cfg.k()
        )));
    }
    let pencil = build_planar_pencil(cfg, true)?;
    let pencil = pencil.with_var_order(&["x", "y", "d"])?;
    let mut entries = vec![vec![Some(pencil.constant_matrix().scale(&rational::int(-1)))]];
    for (_, m) in pencil.coeffs() {
        entries.push(vec![Some(m.clone())]);
    }
    Ok(Problem {
        objective: vec![rational::int(0), rational::int(0), rational::int(1)],
        block_sizes: vec![pencil.size()],
        entries,
    })
}

fn lifted(cfg: &FociConfig) -> Problem {
    let k = cfg.k();
    let z = || rational::int(0);
    let sym = |a: Rational, b: Rational, c: Rational| {
        RatMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]])
    };
    let all_blocks = |m: &RatMatrix| vec![Some(m.clone()); k];
    let f0: Vec<Option<RatMatrix>> = cfg
        .foci()
        .iter()
        .map(|f| Some(sym(f[0].clone(), f[1].clone(), -f[0].clone())))
        .collect();
    let mut entries = vec![
        f0,
        all_blocks(&sym(rational::int(1), z(), rational::int(-1))),
        all_blocks(&sym(z(), rational::int(1), z())),
    ];
    for i in 0..k {
        let mut row = vec![None; k];
        row[i] = Some(RatMatrix::identity(2));
        entries.push(row);
    }
    let mut objective = vec![z(), z()];
    objective.extend(cfg.weights().iter().cloned());
    Problem { objective, block_sizes: vec![2; k], entries }
}

fn render(p: &Problem) -> String {
    let num = |r: &Rational| format!("{}", rational::to_f64(r));
    let mut out = String::new();
    writeln!(out, "{}", p.objective.len()).unwrap();
    writeln!(out, "{}", p.block_sizes.len()).unwrap();
    let sizes: Vec<String> = p.block_sizes.iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", sizes.join(" ")).unwrap();
    let obj: Vec<String> = p.objective.iter().map(num).collect();
    writeln!(out, "{}", obj.join(" ")).unwrap();
    for (var, blocks) in p.entries.iter().enumerate() {
        for (b, m) in blocks.iter().enumerate() {
            let Some(m) = m else { continue };
            for i in 0..m.size() {
                for j in i..m.size() {
                    let v = &m[(i, j)];
                    if *v != rational::int(0) {
                        writeln!(out, "{} {} {} {} {}", var, b + 1, i + 1, j + 1, num(v)).unwrap();
                    }
                }
            }
        }
    }
    out
}
