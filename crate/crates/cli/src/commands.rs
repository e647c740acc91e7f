//! One function per subcommand; each returns a JSON report and its tally.

use crate::args::{Command, Options};
use crate::report::{self, Tally};
use mirrorkit_core::algebra::Algebra;
use mirrorkit_core::error::Error;
use mirrorkit_core::field::{Field, Rat};
use mirrorkit_core::format::{self, relation_text};
use mirrorkit_core::homology::{self, dominant_dimension, global_dimension, injective_dimension, tor_corner};
use mirrorkit_core::invariants::{cartan_matrix, is_symmetric, simple_count};
use mirrorkit_core::mirror::{mirror_at, mirror_reflective, Mirror};
use mirrorkit_core::mirror_quiver::{certify_theta, mirror_quiver};
use mirrorkit_core::module::{Module, Ring};
use mirrorkit_core::quiver::{Presentation, Relation};
use mirrorkit_core::rewrite::algebra_of;
use mirrorkit_core::strat::{
    ext_comparison_degree, gendo_symmetric, idempotent_ideal_checks, strong_idempotent, stratified_dimension,
    StrongIdem,
};
use mirrorkit_core::tower::{build_tower, tower_report, ReportOptions};
use mirrorkit_core::verdict::{Check, Verdict};
use serde_json::{json, Map, Value};
use std::path::Path;

/// Failure of a command before a report could be produced.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Verification { .. }) => 1,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

type Out = Result<(Value, Tally), CliError>;

pub fn load(path: &Path, opts: &Options) -> Result<Presentation, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
    let field = match &opts.field {
        Some(f) => Some(Field::from_name(f).map_err(CliError::Usage)?),
        None => None,
    };
    format::parse_with(&text, field).map_err(|e| match e {
        Error::Syntax { line, column, message } => {
            CliError::Io(format!("{}:{}:{}: {}", path.display(), line, column, message))
        }
        other => CliError::Core(other),
    })
}

fn algebra(pres: &Presentation, opts: &Options) -> Result<Algebra, CliError> {
    Ok(algebra_of(pres, opts.degree_cap)?.1.algebra)
}

/// Resolves `--idem NAME`, `--idem NAME=V+V`, or the first named idempotent.
pub fn resolve_idem(pres: &Presentation, arg: Option<&str>) -> Result<(String, Vec<usize>), CliError> {
    let q = &pres.quiver;
    match arg {
        None => pres
            .idempotents
            .first()
            .cloned()
            .ok_or_else(|| CliError::Usage("no idempotent in the file; pass --idem NAME=V+V".into())),
        Some(s) => match s.split_once('=') {
            Some((name, vs)) => {
                let mut set = Vec::new();
                for v in vs.split('+').map(str::trim) {
                    let i = q.vertex(v).ok_or_else(|| CliError::Usage(format!("unknown vertex `{}`", v)))?;
                    if !set.contains(&i) {
                        set.push(i);
                    }
                }
                set.sort_unstable();
                Ok((name.trim().to_string(), set))
            }
            None => pres
                .idempotents
                .iter()
                .find(|(n, _)| n == s)
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("unknown idempotent `{}`", s))),
        },
    }
}

fn vertex_list(pres: &Presentation, set: &[usize]) -> Value {
    json!(set.iter().map(|v| pres.quiver.vertices[*v].clone()).collect::<Vec<_>>())
}

fn relations(pres: &Presentation, rs: &[Relation]) -> Value {
    json!(rs.iter().map(|r| relation_text(&pres.quiver, pres.field, r)).collect::<Vec<_>>())
}

fn checks(cs: &[Check], t: &mut Tally) -> Value {
    cs.iter().for_each(|c| t.check(c));
    json!(cs.iter().map(report::check).collect::<Vec<_>>())
}

fn idem_json(pres: &Presentation, name: &str, set: &[usize]) -> Value {
    json!({ "name": name, "vertices": vertex_list(pres, set) })
}

pub fn evaluate(cmd: &Command, opts: &Options) -> Out {
    let pres = load(cmd.file(), opts)?;
    match cmd {
        Command::Parse { .. } => parse(&pres),
        Command::Basis { .. } => basis(&pres, opts),
        Command::Mirror { idem, scale, .. } => mirror(&pres, opts, idem.idem.as_deref(), scale.as_deref()),
        Command::ReducedMirror { idem, .. } => reduced_mirror(&pres, opts, idem.idem.as_deref()),
        Command::MirrorQuiver { v0, certify_theta, .. } => quiver_of_mirror(&pres, opts, v0, *certify_theta),
        Command::CheckSymmetric { .. } => check_symmetric(&pres, opts),
        Command::CheckGendo { .. } => check_gendo(&pres, opts),
        Command::Domdim { .. } => domdim(&pres, opts),
        Command::Ext { max, .. } => ext(&pres, opts, *max),
        Command::Tor { idem, max, .. } => tor(&pres, opts, idem.idem.as_deref(), *max),
        Command::StrongIdem { idem, .. } => strong_idem(&pres, opts, idem.idem.as_deref()),
        Command::StratDim { limit, .. } => strat_dim(&pres, opts, *limit),
        Command::Tower { idem, levels, sd_limit, .. } => tower(&pres, opts, idem.idem.as_deref(), *levels, *sd_limit),
        Command::VerifyPaperSuite { idem, .. } => suite(&pres, opts, idem.idem.as_deref()),
    }
}

fn parse(pres: &Presentation) -> Out {
    let q = &pres.quiver;
    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .map(|a| json!({ "name": a.name, "source": q.vertices[a.source], "target": q.vertices[a.target] }))
        .collect();
    let mut idems = Map::new();
    for (n, set) in &pres.idempotents {
        idems.insert(n.clone(), vertex_list(pres, set));
    }
    Ok((
        json!({
            "field": pres.field.name(),
            "vertices": q.vertices,
            "arrows": arrows,
            "relations": relations(pres, &pres.relations),
            "idempotents": idems,
            "normalized": format::emit(pres),
        }),
        Tally::default(),
    ))
}

fn basis(pres: &Presentation, opts: &Options) -> Out {
    let (rs, pa) = algebra_of(pres, opts.degree_cap)?;
    let a = &pa.algebra;
    let names: Vec<String> = pa.basis.iter().map(|p| pres.quiver.path_name(p)).collect();
    Ok((
        json!({
            "dimension": a.dim(),
            "complete": rs.complete,
            "rules": rs.rules.len(),
            "basis": names,
            "simples": simple_count(a)?,
            "cartan": cartan_matrix(a)?,
        }),
        Tally::default(),
    ))
}

fn mirror_summary(pres: &Presentation, m: &Mirror) -> Result<Value, CliError> {
    let a = &m.source;
    let corner = a.corner(&m.tensor.e)?;
    Ok(json!({
        "dim_A": a.dim(),
        "dim_eAe": corner.algebra.dim(),
        "dim_T": m.tensor.dim(),
        "dim_R": m.algebra.dim(),
        "simples_A": simple_count(a)?,
        "simples_eAe": simple_count(&corner.algebra)?,
        "simples_R": simple_count(&m.algebra)?,
        "dim_I": m.ideal_i.dim(),
        "dim_J": m.ideal_j.dim(),
        "generator_case": m.is_generator_case(),
        "e": vertex_list(pres, &m.subset),
    }))
}

fn parse_scale(k: Field, s: &str) -> Result<Rat, CliError> {
    let x = Rat::parse(s.trim()).ok_or_else(|| CliError::Usage(format!("bad scale `{}`", s)))?;
    let x = k.from_rat(&x).ok_or_else(|| CliError::Usage(format!("scale `{}` is not defined over {}", s, k.name())))?;
    if x.is_zero() {
        return Err(CliError::Usage("scale must be nonzero".into()));
    }
    Ok(x)
}

fn mirror(pres: &Presentation, opts: &Options, idem: Option<&str>, scale: Option<&str>) -> Out {
    let (name, set) = resolve_idem(pres, idem)?;
    let a = algebra(pres, opts)?;
    let e = a.family_sum(&set);
    let c = match scale {
        Some(s) => parse_scale(a.field, s)?,
        None => Rat::ONE,
    };
    let lambda = a.scale(&c, &e);
    let m = mirror_reflective(&a, &e, &lambda)?;
    let mut t = Tally::default();
    let mut out = mirror_summary(pres, &m)?;
    let o = out.as_object_mut().unwrap();
    o.insert("idempotent".into(), idem_json(pres, &name, &set));
    o.insert("scale".into(), report::rat(&c));
    o.insert("properties".into(), checks(&m.property_suite()?, &mut t));
    if let Some(b) = m.block_check()? {
        o.insert("blocks".into(), checks(&[b], &mut t));
    }
    Ok((out, t))
}

fn reduced_mirror(pres: &Presentation, opts: &Options, idem: Option<&str>) -> Out {
    let (name, set) = resolve_idem(pres, idem)?;
    let a = algebra(pres, opts)?;
    let m = mirror_at(&a, &a.family_sum(&set))?;
    let s = m.reduced()?;
    let sa = s.algebra();
    let mut t = Tally::default();
    let (ns, na) = (simple_count(sa)?, simple_count(&a)?);
    let count = Check::new("#(S) = #(A)", ns == na, format!("{} and {}", ns, na));
    let sym = is_symmetric(sa, opts.trials, opts.seed);
    Ok((
        json!({
            "idempotent": idem_json(pres, &name, &set),
            "dim_A": a.dim(),
            "dim_R": m.algebra.dim(),
            "dim_S": sa.dim(),
            "simples_S": ns,
            "cartan_S": cartan_matrix(sa)?,
            "counting": checks(&[count], &mut t),
            "symmetric": report::unit_verdict(&sym),
        }),
        t,
    ))
}

fn quiver_of_mirror(pres: &Presentation, opts: &Options, v0: &str, certify: bool) -> Out {
    let mut set = Vec::new();
    for v in v0.split(',').map(str::trim).filter(|v| !v.is_empty()) {
        let i = pres.quiver.vertex(v).ok_or_else(|| CliError::Usage(format!("unknown vertex `{}`", v)))?;
        if !set.contains(&i) {
            set.push(i);
        }
    }
    set.sort_unstable();
    let mp = mirror_quiver(pres, &set, opts.degree_cap)?;
    let d = &mp.presentation;
    let mut t = Tally::default();
    let mut out = json!({
        "v0": vertex_list(pres, &set),
        "vertices": d.quiver.vertices.len(),
        "arrows": d.quiver.arrows.len(),
        "path_bound": mp.path_bound,
        "psi1": relations(d, &mp.psi[0]),
        "psi2": relations(d, &mp.psi[1]),
        "psi3": relations(d, &mp.psi[2]),
        "psi4": relations(d, &mp.psi[3]),
        "quiver": format::emit(d),
    });
    if certify {
        let cert = certify_theta(pres, &set, opts.degree_cap)?;
        let o = out.as_object_mut().unwrap();
        o.insert("theta".into(), checks(&cert.checks, &mut t));
        o.insert("theta_certified".into(), json!(cert.certified()));
    }
    Ok((out, t))
}

fn check_symmetric(pres: &Presentation, opts: &Options) -> Out {
    let a = algebra(pres, opts)?;
    let v = is_symmetric(&a, opts.trials, opts.seed);
    let mut t = Tally::default();
    t.add(&v);
    let out = report::verdict(&v, |d| json!({ "functional": report::vector(&d.functional) }));
    Ok((json!({ "dimension": a.dim(), "symmetric": out }), t))
}

fn check_gendo(pres: &Presentation, opts: &Options) -> Out {
    let a = algebra(pres, opts)?;
    let v = gendo_symmetric(&a, opts.cap, opts.trials, opts.seed)?;
    let mut t = Tally::default();
    t.add(&v);
    let out = report::verdict(&v, |w| {
        json!({
            "vertices": vertex_list(pres, &w.subset),
            "iota": report::vector(&w.iota),
            "dominant_dimension": report::dim(&w.dominant),
        })
    });
    Ok((json!({ "gendo_symmetric": out }), t))
}

fn domdim(pres: &Presentation, opts: &Options) -> Out {
    let a = algebra(pres, opts)?;
    let ring = Ring::new(a)?;
    let dm = dominant_dimension(&ring, opts.cap)?;
    let gd = global_dimension(&ring, opts.cap, opts.trials, opts.seed)?;
    let id = injective_dimension(&ring, opts.cap)?;
    let mut t = Tally::default();
    t.add(&dm.verdict);
    t.add(&gd);
    t.add(&id);
    Ok((
        json!({
            "dominant_dimension": report::verdict(&dm.verdict, |d| json!(d)),
            "dominant_lower_bound": report::dim(&dm.lower_bound()),
            "global_dimension": report::verdict(&gd, report::dim),
            "injective_dimension": report::verdict(&id, |d| json!(d)),
        }),
        t,
    ))
}

fn ext(pres: &Presentation, opts: &Options, max: usize) -> Out {
    let a = algebra(pres, opts)?;
    let ring = Ring::new(a)?;
    let simples: Vec<Module> = (0..ring.alg.idems.len()).map(|i| Module::simple(&ring, i)).collect();
    let n = simples.len();
    let mut table = vec![vec![vec![0usize; n]; n]; max + 1];
    for (x, sx) in simples.iter().enumerate() {
        for (y, sy) in simples.iter().enumerate() {
            for (i, d) in homology::ext(sx, sy, max)?.into_iter().enumerate().take(max + 1) {
                table[i][x][y] = d;
            }
        }
    }
    let degrees: Vec<Value> = table.iter().enumerate().map(|(i, m)| json!({ "degree": i, "dims": m })).collect();
    Ok((json!({ "simples": n, "ext": degrees }), Tally::default()))
}

fn tor(pres: &Presentation, opts: &Options, idem: Option<&str>, max: usize) -> Out {
    let (name, set) = resolve_idem(pres, idem)?;
    let a = algebra(pres, opts)?;
    let (dims, ideal) = tor_corner(&a, &a.family_sum(&set), max)?;
    Ok((json!({ "idempotent": idem_json(pres, &name, &set), "tor": dims, "ideal_dim": ideal }), Tally::default()))
}

fn strong_verdict(v: &StrongIdem) -> (Verdict<()>, Value) {
    match v {
        StrongIdem::CertifiedStrong(r) => (Verdict::Certified(()), json!({ "state": "certified", "reason": r.name() })),
        StrongIdem::NIdempotentUpTo(n) => (Verdict::UnknownBeyond(*n), json!({ "state": "unknown", "bound": n })),
        StrongIdem::RefutedAt { n, reason } => {
            (Verdict::refuted_at(*n, reason.clone()), json!({ "state": "refuted", "degree": n, "reason": reason }))
        }
    }
}

fn strong_idem(pres: &Presentation, opts: &Options, idem: Option<&str>) -> Out {
    let (name, set) = resolve_idem(pres, idem)?;
    let a = algebra(pres, opts)?;
    let e = a.family_sum(&set);
    let s = strong_idempotent(&a, &e, opts.cap, opts.trials, opts.seed)?;
    let (v, out) = strong_verdict(&s.verdict);
    let mut t = Tally::default();
    t.add(&v);
    Ok((
        json!({
            "idempotent": idem_json(pres, &name, &set),
            "strong": out,
            "tor": s.tor,
            "ideal_dim": s.ideal_dim,
        }),
        t,
    ))
}

fn strat_dim(pres: &Presentation, opts: &Options, limit: usize) -> Out {
    let a = algebra(pres, opts)?;
    let sd = stratified_dimension(&a, opts.cap, opts.trials, opts.seed, limit)?;
    let mut t = Tally::default();
    if sd.lo == sd.hi {
        t.certified += 1;
    } else {
        t.unknown += 1;
    }
    let (lo, hi) = sd.ratio();
    let chain: Vec<Value> = sd.witness.parts.iter().map(|p| vertex_list(pres, p)).collect();
    Ok((
        json!({
            "lower": sd.lo,
            "upper": sd.hi,
            "simples": sd.simples,
            "ratio": [report::rat(&lo), report::rat(&hi)],
            "witness": chain,
            "states": sd.states,
        }),
        t,
    ))
}

fn tower(pres: &Presentation, opts: &Options, idem: Option<&str>, levels: usize, sd_limit: usize) -> Out {
    let (name, set) = resolve_idem(pres, idem)?;
    let a = algebra(pres, opts)?;
    let tw = build_tower(&a, &set, levels, opts.budget, opts.trials, opts.seed)?;
    let ro = ReportOptions { cap: opts.cap, trials: opts.trials, seed: opts.seed, sd_limit, morita: true };
    let rep = tower_report(&tw, &ro)?;
    let mut t = Tally::default();
    let mut lv = Vec::new();
    for l in &rep.levels {
        l.findings.iter().for_each(|f| t.add(&f.verdict));
        let [da, dr, db, ds] = l.dims;
        let [sa, sr, sb, ss] = l.simples;
        lv.push(json!({
            "n": l.n,
            "dims": { "A": da, "R": dr, "B": db, "S": ds },
            "simples": { "A": sa, "R": sr, "B": sb, "S": ss },
            "dm_A": report::dim(&l.dm_a),
            "dm_B": report::dim(&l.dm_b),
            "gd_A": report::verdict(&l.gd_a, report::dim),
            "gd_B": report::verdict(&l.gd_b, report::dim),
            "findings": l.findings.iter().map(report::finding).collect::<Vec<_>>(),
        }));
    }
    Ok((
        json!({
            "idempotent": idem_json(pres, &name, &set),
            "levels": lv,
            "stopped": rep.stopped,
        }),
        t,
    ))
}

fn suite(pres: &Presentation, opts: &Options, idem: Option<&str>) -> Out {
    let (name, set) = resolve_idem(pres, idem)?;
    let a = algebra(pres, opts)?;
    let e = a.family_sum(&set);
    let m = mirror_at(&a, &e)?;
    let mut t = Tally::default();
    let mut out = Map::new();
    out.insert("idempotent".into(), idem_json(pres, &name, &set));
    out.insert("mirror".into(), mirror_summary(pres, &m)?);
    out.insert("properties".into(), checks(&m.property_suite()?, &mut t));
    if let Some(b) = m.block_check()? {
        out.insert("blocks".into(), checks(&[b], &mut t));
    }

    let depth = opts.cap.min(6);
    out.insert("ideal_checks".into(), checks(&idempotent_ideal_checks(&m, 3)?, &mut t));
    if let Some(ebar) = &m.ebar {
        let s = strong_idempotent(&m.algebra, ebar, depth, opts.trials, opts.seed)?;
        // Informational: I may be 2-idempotent without being strong.
        let sv = strong_verdict(&s.verdict).1;
        let cmp = ext_comparison_degree(&m.algebra, ebar, depth)?;
        let tor_degree = match &s.verdict {
            StrongIdem::RefutedAt { n, .. } => Some(*n),
            _ => None,
        };
        let agree = Check::new(
            "Tor and Ext refutation degrees agree",
            tor_degree == cmp,
            format!("Tor: {:?}, Ext: {:?}", tor_degree, cmp),
        );
        out.insert("strong_ebar".into(), sv);
        out.insert("refutation_degree".into(), checks(&[agree], &mut t));
    }

    let g = gendo_symmetric(&a, opts.cap, opts.trials, opts.seed)?;
    out.insert("gendo_symmetric".into(), report::unit_verdict(&g));
    if let Verdict::Certified(w) = &g {
        if w.subset == m.subset {
            let r = is_symmetric(&m.algebra, opts.trials, opts.seed);
            t.add(&r);
            out.insert("R_symmetric".into(), report::unit_verdict(&r));
            let s = m.reduced()?;
            let sv = is_symmetric(s.algebra(), opts.trials, opts.seed);
            t.add(&sv);
            out.insert("S_symmetric".into(), report::unit_verdict(&sv));
        }
    }

    let cert = certify_theta(pres, &set, opts.degree_cap)?;
    out.insert("theta".into(), checks(&cert.checks, &mut t));
    Ok((Value::Object(out), t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres() -> Presentation {
        format::parse("vertex 1 2 3\narrow a : 1 -> 2\nidem e = 2\nidem f = 1 + 3\n").unwrap()
    }

    #[test]
    fn idempotent_resolution() {
        let p = pres();
        assert_eq!(resolve_idem(&p, None).unwrap(), ("e".into(), vec![1]));
        assert_eq!(resolve_idem(&p, Some("f")).unwrap().1, vec![0, 2]);
        assert_eq!(resolve_idem(&p, Some("g=3+1+3")).unwrap(), ("g".into(), vec![0, 2]));
        assert!(resolve_idem(&p, Some("h")).is_err());
        assert!(resolve_idem(&p, Some("h=4")).is_err());
        let bare = format::parse("vertex 1\n").unwrap();
        assert!(matches!(resolve_idem(&bare, None), Err(CliError::Usage(_))));
    }

    #[test]
    fn scales() {
        let k = Field::Prime(5);
        assert_eq!(parse_scale(k, "3").unwrap(), Rat::int(3));
        assert_eq!(parse_scale(k, "1/2").unwrap(), Rat::int(3));
        assert!(parse_scale(k, "5").is_err());
        assert!(parse_scale(Field::Rationals, "x").is_err());
    }

    #[test]
    fn verification_errors_exit_1() {
        assert_eq!(CliError::Core(Error::verification("c", "d")).exit_code(), 1);
        assert_eq!(CliError::Core(Error::Limit("x".into())).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
