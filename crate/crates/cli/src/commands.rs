use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use kerphi_filler::{random_kernel_loop, DehnKind, Filler, KernelLoop};
use kerphi_lattice::{GenLetter, Generator, Kind, Lattice};
use kerphi_product::{Instance, ProductElement};
use kerphi_triangle::{area_bound, ActualizationReport, Triangle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::InstanceConfig;

/// Range of the finite superadditivity check on `δ(n)/n`.
const RATIO_CHECK_RANGE: u64 = 200;

/// A command's report and overall verdict.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub pass: bool,
}

impl Outcome {
    fn new(text: String, json: serde_json::Value, pass: bool) -> Self {
        Self { text, json, pass }
    }
}

pub enum LoopSource<'a> {
    File(&'a Path),
    Random { length: usize },
}

pub fn lattice(cfg: &InstanceConfig, bfs_budget: Option<u32>) -> Result<Arc<Lattice>> {
    let inst: Instance = cfg.instance(bfs_budget)?;
    Ok(Arc::new(Lattice::new(Arc::new(inst))?))
}

/// Whitespace-separated generator tokens; `e` is the empty word.
pub fn parse_word(s: &str) -> Result<Vec<GenLetter>> {
    s.split_whitespace()
        .filter(|t| *t != "e")
        .map(|t| t.parse::<GenLetter>().map_err(Into::into))
        .collect()
}

/// A random word over the nontrivial generators of `X̄` whose value has at
/// most `max_size` letters.
pub fn random_element(lat: &Lattice, rng: &mut ChaCha8Rng, max_size: usize) -> (Vec<GenLetter>, ProductElement) {
    let xbar: Vec<Generator> = lat.xbar().into_iter().filter(|g| !g.is_trivial(lat.instance())).collect();
    loop {
        let len = rng.gen_range(0..=max_size / 2);
        let word: Vec<GenLetter> = (0..len)
            .map(|_| xbar[rng.gen_range(0..xbar.len())].letter(rng.gen_bool(0.5)))
            .collect();
        let g = lat.evaluate(&word).expect("generators realize");
        if g.size() <= max_size {
            return (word, g);
        }
    }
}

fn show(w: &[GenLetter]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Serialize)]
struct FactorSummary {
    coordinate: usize,
    generators: usize,
    free_basis: bool,
    kernel_generators: usize,
}

pub fn cmd_validate(cfg: &InstanceConfig, bfs_budget: Option<u32>) -> Result<Outcome> {
    let lat = lattice(cfg, bfs_budget)?;
    let inst = lat.instance();
    let factors: Vec<FactorSummary> = inst
        .factors()
        .iter()
        .enumerate()
        .map(|(i, f)| FactorSummary {
            coordinate: i + 1,
            generators: f.spec().generator_count(),
            free_basis: f.is_free_basis(),
            kernel_generators: f.ks().y().len(),
        })
        .collect();
    let xbar = lat.xbar().len();
    let faces = lat.defs().iter().filter(|d| d.kind() == Kind::Face).count();
    let edges = lat.defs().len() - faces;
    let mut text = format!(
        "instance n={} m={} blocks={:?}\nsubgroups {faces} face, {edges} edge; generating set |X| = {xbar}\n",
        cfg.n, cfg.m, cfg.block_sizes,
    );
    for f in &factors {
        text.push_str(&format!(
            "  factor {}: rank {}, {} kernel generators, free basis {}\n",
            f.coordinate, f.generators, f.kernel_generators, f.free_basis
        ));
    }
    text.push_str("verdict pass\n");
    let js = json!({
        "n": cfg.n,
        "m": cfg.m,
        "block_sizes": cfg.block_sizes,
        "faces": faces,
        "edges": edges,
        "generating_set": xbar,
        "factors": factors,
    });
    Ok(Outcome::new(text, js, true))
}

pub fn cmd_tables(cfg: &InstanceConfig, bfs_budget: Option<u32>) -> Result<Outcome> {
    let lat = lattice(cfg, bfs_budget)?;
    let r = lat.verify_all()?;
    Ok(Outcome::new(r.to_text(), serde_json::to_value(&r)?, r.pass))
}

pub struct TriangleArgs<'a> {
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub c: Option<&'a str>,
    pub max_size: usize,
    pub seed: u64,
}

pub fn cmd_triangle(cfg: &InstanceConfig, bfs_budget: Option<u32>, args: &TriangleArgs) -> Result<Outcome> {
    let lat = lattice(cfg, bfs_budget)?;
    let tri = Triangle::new(Arc::clone(&lat));
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut words = Vec::with_capacity(3);
    for (name, src) in [("a", args.a), ("b", args.b), ("c", args.c)] {
        let w = match src {
            Some(s) => parse_word(s).with_context(|| format!("element {name}"))?,
            None => random_element(&lat, &mut rng, args.max_size).0,
        };
        words.push(w);
    }
    let vals = words
        .iter()
        .map(|w| lat.evaluate(w))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let act = tri.actualize(&vals[0], &vals[1], &vals[2])?;
    let report = ActualizationReport::new(&act, tri.template());
    let model = cfg.dehn.model();
    let area = match &model.kind {
        DehnKind::Table(_) => None,
        _ => Some(area_bound(&act, |x| model.eval(x).unwrap_or(u128::MAX))),
    };
    let mut text = String::new();
    for (name, (w, v)) in ["a", "b", "c"].iter().zip(words.iter().zip(&vals)) {
        text.push_str(&format!("{name} = {}  ->  {v}\n", show(w)));
    }
    text.push_str(&report.to_text());
    if let Some(a) = area {
        text.push_str(&format!("area bound 25d(24D) = {}, region sum = {}\n", a.total, a.per_region));
    }
    text.push_str("verdict pass\n");
    let js = json!({
        "a": show(&words[0]),
        "b": show(&words[1]),
        "c": show(&words[2]),
        "actualization": report,
        "area": area,
    });
    Ok(Outcome::new(text, js, true))
}

pub fn cmd_fill(cfg: &InstanceConfig, bfs_budget: Option<u32>, src: LoopSource, seed: u64) -> Result<Outcome> {
    let lat = lattice(cfg, bfs_budget)?;
    let tri = Triangle::new(Arc::clone(&lat));
    let l = match src {
        LoopSource::File(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            text.parse::<KernelLoop>().with_context(|| format!("in {}", p.display()))?
        }
        LoopSource::Random { length } => random_kernel_loop(&tri, length, seed)?,
    };
    let model = cfg.dehn.model();
    let range = match &model.kind {
        DehnKind::Table(t) => (t.len() as u64).saturating_sub(1).min(RATIO_CHECK_RANGE),
        _ => RATIO_CHECK_RANGE,
    };
    let ratio_ok = model.check_superadditive_ratio(range)?;
    let mut filler = Filler::new(&tri, model.clone());
    if let Some(m) = cfg.bigon_constant {
        filler = filler.with_m(Some(m as u128));
    }
    let r = filler.fill(&l)?;
    let consistent = !model.superadditive || ratio_ok;
    let mut text = r.to_text();
    text.push_str(&format!(
        "d(n)/n superadditive on 1..={range}: {ratio_ok} (asserted {})\n",
        model.superadditive
    ));
    if !consistent {
        text.push_str("asserted superadditivity contradicted on the checked range\n");
    }
    let pass = r.pass && consistent;
    text.push_str(&format!("overall {}\n", if pass { "pass" } else { "FAIL" }));
    let js = json!({
        "loop": l.to_string().lines().collect::<Vec<_>>(),
        "report": r,
        "ratio_check": { "range": range, "superadditive": ratio_ok, "asserted": model.superadditive },
    });
    Ok(Outcome::new(text, js, pass))
}

pub fn ensure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(t) = threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}
