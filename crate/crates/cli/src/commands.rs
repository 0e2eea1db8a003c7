use std::fs;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use qsym_core::cnum::vec;
use qsym_core::fqg::CesaroMode;
use qsym_core::grouporacle::{FiniteGroup, Permutation};
use qsym_core::hopfimage::{dual_generated_dim, generated_subgroup, hopf_image, inner_faithful, Method, SubgroupMap};
use qsym_core::io::{self, FamilyJson, FqgJson, HomJson, LoadedFqg, MagicJson, Origin, RepJson, StateJson};
use qsym_core::qfam::check_family;
use qsym_core::qinc::{
    coefficient_growth, complete, displayed_completion, enumerate, free_pair_rep, s4_generation_check, standard_free_pair, GrowthCaps,
};
use qsym_core::random::rng;
use qsym_core::{Error, StarHom, Tolerance};
use rand::Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::{Builder, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 3 for bad input, 4 for internal inconsistency, 2 when a computation did not settle.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(Error::Internal(_)) => 4,
            Self::Core(Error::Convergence { .. }) => 2,
            _ => 3,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CesaroArg {
    Spectral,
    Iterative,
}

#[derive(Debug, Subcommand)]
pub enum QincCommand {
    /// List the classical increasing sequences of length K in 1..=N.
    Enumerate { k: usize, n: usize },
    /// Complete a representation file to a magic unitary.
    Complete {
        rep: PathBuf,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Complete the six classical sequences for k = 2, n = 4 and close the permutations.
    S4check,
    /// Complete the standard two-projection representation with parameter t.
    Freepair {
        /// Drawn from the seed when absent.
        #[arg(long)]
        t: Option<f64>,
    },
    /// Dimensions generated by the coefficients of iterated completed families.
    Growth {
        rep: PathBuf,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long, default_value_t = GrowthCaps::default().degree)]
        degree_cap: usize,
        #[arg(long, default_value_t = GrowthCaps::default().dim)]
        dim_cap: usize,
    },
}

fn read(b: &mut Builder, path: &Path) -> CliResult<String> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    b.input(text.as_bytes());
    Ok(text)
}

fn write_json<J: serde::Serialize>(path: &Path, value: &J) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("wire types serialize");
    fs::write(path, text).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Kernel => "kernel",
        Method::Coideal => "coideal",
        Method::Both => "both",
    }
}

fn cycles(p: &Permutation) -> String {
    let s: String = p
        .cycles()
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn load_fqg(b: &mut Builder, path: &Path, tol: &Tolerance) -> CliResult<LoadedFqg<f64>> {
    Ok(io::from_str::<FqgJson>(&read(b, path)?)?.build(tol)?)
}

pub fn verify_family(path: &Path, cfg: &RunConfig) -> CliResult<Report> {
    let tol = cfg.tolerance()?;
    let mut b = Builder::new("verify-family");
    let f = io::from_str::<FamilyJson>(&read(&mut b, path)?)?.build(&tol)?;
    let r = check_family(&f, &tol);
    for (name, v) in [("wang1", r.wang1), ("wang2", r.wang2), ("wang3", r.wang3), ("wang4", r.wang4), ("unitary", r.unitary)] {
        b.residual(name, v);
    }
    let (p, i, j) = r.wang2_witness;
    let results = json!({
        "n": f.n(),
        "index_dim": f.index().dim(),
        "checks": {
            "wang1": r.wang1 <= tol.eps_eq,
            "wang2": r.wang2 <= tol.eps_eq,
            "wang3": r.wang3 <= tol.eps_eq,
            "wang4": r.wang4 <= tol.eps_eq,
            "unitary": r.unitary <= tol.eps_eq,
            "podles": r.podles_full,
        },
        "witnesses": {
            "wang1": r.wang1_witness + 1,
            "wang2": [p + 1, i + 1, j + 1],
            "wang3": r.wang3_witness + 1,
            "wang4": [r.wang4_witness.0 + 1, r.wang4_witness.1 + 1],
        },
        "podles_rank": r.podles_rank,
        "podles_target": r.podles_target,
        "state_preserved": r.state_preserved,
    });
    Ok(b.finish(r.passes(&tol), results))
}

/// Expected Hopf image dimension from the group alone, for group-derived hosts.
fn oracle_dim(origin: &Origin, l: &StarHom, tol: &Tolerance) -> Option<(&'static str, usize)> {
    let cols = |g: &FiniteGroup| (0..g.order()).map(|x| l.matrix.column(x)).collect::<Vec<_>>();
    match origin {
        Origin::FunctionAlgebra(g) => {
            // the points where the map does not vanish generate the subgroup
            let support: Vec<usize> = cols(g).iter().enumerate().filter(|(_, c)| vec::norm_max(c) > tol.eps_eq).map(|(x, _)| x).collect();
            Some(("subgroup generated by the support", g.subgroup_generated(&support).order()))
        }
        Origin::GroupAlgebra(g) => {
            let unit = l.target.unit();
            let kernel: Vec<usize> = cols(g).iter().enumerate().filter(|(_, c)| vec::max_diff(c, unit) <= tol.eps_eq).map(|(x, _)| x).collect();
            Some(("index of the kernel of the representation", g.order() / g.subgroup_generated(&kernel).order()))
        }
        Origin::Explicit => None,
    }
}

pub fn hopf_image_cmd(fqg: &Path, hom: &Path, export: Option<&Path>, cfg: &RunConfig) -> CliResult<Report> {
    let tol = cfg.tolerance()?;
    let mut b = Builder::new("hopf-image");
    let host = load_fqg(&mut b, fqg, &tol)?;
    let l = io::from_str::<HomJson>(&read(&mut b, hom)?)?.build(&host, &tol)?;
    let method = cfg.method.into();
    let res = hopf_image(&host.q, &l, method, &tol)?;
    let rep = &res.report;
    let residuals = json!({
        "ideal": rep.ideal,
        "coideal": rep.coideal,
        "factorization": rep.factorization,
        "pi_hom": rep.pi_hom.max(),
        "theta_hom": rep.theta_hom.max(),
        "quotient": rep.quotient.max_residual(),
    });
    for (k, v) in residuals.as_object().expect("object") {
        b.residual(k, v.as_f64().expect("number"));
    }
    let mut passed = rep.passes(&tol);
    let oracle = match oracle_dim(&host.origin, &l, &tol) {
        Some((kind, want)) => {
            passed &= want == res.dim();
            json!({"kind": kind, "expected_dim": want, "agrees": want == res.dim()})
        }
        None => json!({}),
    };
    if let Some(path) = export {
        write_json(path, &FqgJson::describe(&res.quotient))?;
    }
    let results = json!({
        "dim_A": host.q.dim(),
        "dim_S": res.dim(),
        "method": method_name(method),
        "n_stabilized": res.n_stabilized,
        "coideal_rounds": res.coideal_rounds,
        "residuals": residuals,
        "inner_faithful": res.dim() == host.q.dim(),
        "oracle": oracle,
    });
    Ok(b.finish(passed, results))
}

pub fn gen_subgroup(fqg: &Path, homs: &[PathBuf], cfg: &RunConfig) -> CliResult<Report> {
    let tol = cfg.tolerance()?;
    let mut b = Builder::new("gen-subgroup");
    let host = load_fqg(&mut b, fqg, &tol)?;
    let mut maps: Vec<SubgroupMap<f64>> = Vec::new();
    let mut oracle_parts = Vec::new();
    for path in homs {
        let j = io::from_str::<HomJson>(&read(&mut b, path)?)?;
        maps.push(j.subgroup_map(&host, &tol)?);
        oracle_parts.push(j.oracle_subgroup(&host.origin)?);
    }
    let method = cfg.method.into();
    let gen = generated_subgroup(&host.q, &maps, method, &tol)?;
    let dual_dim = dual_generated_dim(&host.q, &maps, &tol)?;
    let dim = gen.image.dim();
    let slack = 10.0 * tol.eps_eq;
    let morphism = gen.theta_morphism.iter().copied().fold(0.0, f64::max);
    b.residual("theta_morphism", morphism);
    b.residual("image", gen.image.report.quotient.max_residual().max(gen.image.report.factorization));
    let mut passed = gen.image.report.passes(&tol) && dual_dim == dim && morphism <= slack && gen.theta_surjective.iter().all(|&s| s);

    let oracle = match (&host.origin, oracle_parts.iter().cloned().collect::<Option<Vec<_>>>()) {
        (Origin::FunctionAlgebra(g), Some(parts)) => {
            let want = g.join(&parts.iter().collect::<Vec<_>>()).order();
            passed &= want == dim;
            json!({"kind": "order of the joined subgroup", "expected_dim": want, "agrees": want == dim})
        }
        (Origin::GroupAlgebra(g), Some(parts)) => {
            let common: Vec<usize> = (0..g.order()).filter(|&x| parts.iter().all(|n| n.contains(x))).collect();
            let want = g.order() / g.subgroup_generated(&common).order();
            passed &= want == dim;
            json!({"kind": "index of the intersected normal subgroups", "expected_dim": want, "agrees": want == dim})
        }
        _ => json!({}),
    };
    let results = json!({
        "dim_A": host.q.dim(),
        "dim_S": dim,
        "dual_generated_dim": dual_dim,
        "subgroup_dims": maps.iter().map(|m| m.group.dim()).collect::<Vec<_>>(),
        "method": method_name(method),
        "theta_surjective": gen.theta_surjective,
        "oracle": oracle,
    });
    Ok(b.finish(passed, results))
}

pub fn inner_faithful_cmd(fqg: &Path, hom: &Path, state: &Path, cesaro: CesaroArg, cfg: &RunConfig) -> CliResult<Report> {
    let tol = cfg.tolerance()?;
    let mut b = Builder::new("inner-faithful");
    let host = load_fqg(&mut b, fqg, &tol)?;
    let l = io::from_str::<HomJson>(&read(&mut b, hom)?)?.build(&host, &tol)?;
    let phi = io::from_str::<StateJson>(&read(&mut b, state)?)?.build();
    let mode = match cesaro {
        CesaroArg::Spectral => CesaroMode::Spectral,
        CesaroArg::Iterative => CesaroMode::Iterative,
    };
    let r = inner_faithful(&host.q, &l, &phi, mode, &tol, cfg.max_iter as usize)?;
    b.residual("distance_to_haar", r.distance_to_haar);
    b.residual("idempotency", r.cesaro.idempotency);
    let results = json!({
        "inner_faithful": r.inner_faithful,
        "dim_A": r.dim,
        "dim_S": r.hopf_image_dim,
        "agrees_with_hopf_image": r.agrees,
        "cesaro_mode": format!("{cesaro:?}").to_lowercase(),
        "cesaro_iterations": r.cesaro.iterations,
    });
    Ok(b.finish(r.agrees, results))
}

pub fn qinc(cmd: &QincCommand, cfg: &RunConfig) -> CliResult<Report> {
    let tol = cfg.tolerance()?;
    match cmd {
        QincCommand::Enumerate { k, n } => {
            let mut b = Builder::new("qinc enumerate");
            b.input(format!("{k} {n}").as_bytes());
            let all = enumerate::<f64>(*k, *n)?;
            let worst = all.iter().map(|(_, r)| r.validate().max()).fold(0.0, f64::max);
            b.residual("relations", worst);
            let seqs: Vec<Vec<usize>> = all.iter().map(|(s, _)| s.clone()).collect();
            let results = json!({"k": k, "n": n, "count": seqs.len(), "sequences": seqs});
            Ok(b.finish(worst <= tol.eps_eq, results))
        }
        QincCommand::Complete { rep, export } => {
            let mut b = Builder::new("qinc complete");
            let r = io::from_str::<RepJson>(&read(&mut b, rep)?)?.build::<f64>()?;
            let sr = r.validate();
            let u = complete(&r, &tol)?;
            let mr = u.validate();
            b.residual("input_relations", sr.max());
            b.residual("magic_unitary", mr.max());
            if let Some(path) = export {
                write_json(path, &MagicJson::describe(&u))?;
            }
            let perm = u.to_permutation(&tol).map(|p| cycles(&p));
            let results = json!({"n": u.n(), "d": u.d(), "permutation": perm});
            Ok(b.finish(mr.passes(&tol), results))
        }
        QincCommand::S4check => {
            let b = Builder::new("qinc s4check");
            let c = s4_generation_check();
            let pairs: Vec<Value> = c
                .sequences
                .iter()
                .zip(&c.permutations)
                .map(|(s, p)| json!({"sequence": s, "permutation": cycles(p), "images": one_based(p.images())}))
                .collect();
            let results = json!({"completions": pairs, "order": c.order, "is_s4": c.is_s4});
            Ok(b.finish(c.is_s4, results))
        }
        QincCommand::Freepair { t } => {
            let mut b = Builder::new("qinc freepair");
            let t = t.unwrap_or_else(|| rng(cfg.seed).gen_range(0.0..1.0));
            b.input(&t.to_le_bytes());
            let [p1, p2, q1, q2] = standard_free_pair(t)?;
            let r = free_pair_rep(&p1, &p2, &q1, &q2, &tol)?;
            let u = complete(&r, &tol)?;
            let shown = displayed_completion(&p1, &p2, &q1, &q2)?;
            let magic = u.validate().max();
            let diff = u.max_diff(&shown);
            b.residual("magic_unitary", magic);
            b.residual("displayed_difference", diff);
            let results = json!({"t": t, "d": u.d(), "matches_displayed": diff <= tol.eps_eq});
            Ok(b.finish(magic <= tol.eps_eq && diff <= tol.eps_eq, results))
        }
        QincCommand::Growth { rep, steps, degree_cap, dim_cap } => {
            let mut b = Builder::new("qinc growth");
            b.input(format!("{steps} {degree_cap} {dim_cap}").as_bytes());
            let r = io::from_str::<RepJson>(&read(&mut b, rep)?)?.build::<f64>()?;
            let g = coefficient_growth(&r, *steps, GrowthCaps { degree: *degree_cap, dim: *dim_cap }, &tol)?;
            let results = json!({"dims": g.dims, "truncated": g.truncated, "monotone": g.is_monotone()});
            Ok(b.finish(g.is_monotone(), results))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(CliError::Core(Error::Internal("methods disagree".into())).exit_code(), 4);
        assert_eq!(CliError::Core(Error::Parse("bad".into())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::Precondition("not a hom".into())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::Convergence { iterations: 3, residual: 1.0 }).exit_code(), 2);
    }

    #[test]
    fn cycle_strings_are_one_based() {
        assert_eq!(cycles(&Permutation::new(vec![1, 0, 3, 2]).unwrap()), "(1 2)(3 4)");
        assert_eq!(cycles(&Permutation::identity(3)), "()");
    }
}
