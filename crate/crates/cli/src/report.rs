//! Running a job and the JSON report it produces.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use hyperoct::homology::{AbelianGroup, HomologyResult};
use hyperoct::pipeline::{run_pipeline, stabilization, Direct, Pipeline, Resources, RunOptions, Timings, TruncationPolicy, Verdict};
use hyperoct::Error;
use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra_spec::fingerprint;
use crate::cache::{CacheStats, DiskCache};
use crate::{JobSpec, SpecError};

/// `pipeline → N → value`.
pub type Table<T> = BTreeMap<Pipeline, BTreeMap<usize, T>>;

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub algebra: String,
    pub algebra_fingerprint: String,
    pub dim: usize,
    pub ring: String,
    pub pipelines: Vec<Pipeline>,
    pub max_object: Vec<usize>,
    pub max_degree: usize,
    pub coefficients: Option<String>,
    pub verify: bool,
    pub max_generators: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Caveats {
    pub truncation: String,
    /// Degrees whose Betti numbers may depend on the truncation.
    pub truncated_degrees: Vec<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl From<&AbelianGroup> for Group {
    fn from(g: &AbelianGroup) -> Group {
        Group { rank: g.rank, torsion: strings(&g.torsion) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UctLine {
    pub degree: usize,
    pub computed: Group,
    pub predicted: Group,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientResult {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
    pub uct: Option<Vec<UctLine>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub pipeline: Pipeline,
    pub max_object: usize,
    pub message: String,
    pub degree: Option<usize>,
    pub projected_generators: Option<String>,
}

/// Wall-clock data; excluded from the canonical section.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TimingSection {
    pub runs: Table<Timings>,
    pub cache: Option<CacheStats>,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub parameters: Parameters,
    pub caveats: Caveats,
    pub betti: Table<Vec<usize>>,
    pub torsion: Table<Vec<Vec<String>>>,
    pub sizes: Table<Vec<usize>>,
    pub auxiliary: Table<BTreeMap<String, Vec<usize>>>,
    pub coefficients: Table<CoefficientResult>,
    pub verifications: BTreeMap<String, Verdict>,
    /// Per degree, the first `N` from which the Betti number stayed equal.
    pub stabilization: BTreeMap<Pipeline, Vec<Option<usize>>>,
    pub failures: Vec<Failure>,
    pub timing: TimingSection,
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn torsion_strings(h: &HomologyResult) -> Vec<Vec<String>> {
    h.torsion.iter().map(|t| strings(t)).collect()
}

impl Report {
    pub fn all_verified(&self) -> bool {
        self.verifications.values().all(|v| *v != Verdict::Fail)
    }

    pub fn is_partial(&self) -> bool {
        !self.failures.is_empty()
    }

    /// 0 when complete and every verification passed, 1 on a failed
    /// verification, 3 for a partial report.
    pub fn exit_code(&self) -> i32 {
        if self.is_partial() {
            3
        } else if self.all_verified() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// The report without its timing section.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        std::io::Write::write_all(&mut tmp, self.to_json().as_bytes())?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

const UNREDUCED: [Pipeline; 4] = [Pipeline::Full, Pipeline::Nerve, Pipeline::Reduced, Pipeline::Extended];
const REDUCED: [Pipeline; 2] = [Pipeline::Epi, Pipeline::Slominska];

pub fn run(job: &JobSpec) -> Result<Report, SpecError> {
    job.validate()?;
    let start = Instant::now();
    let algebra = job.algebra.build(job.ring)?;
    let cache = match &job.cache_dir {
        Some(dir) => Some(DiskCache::open(dir).map_err(|e| SpecError::new("cache-dir", e.to_string()))?),
        None => None,
    };
    let resources: &dyn Resources = match &cache {
        Some(c) => c,
        None => &Direct,
    };
    let mut pipelines = Vec::new();
    for p in &job.pipelines {
        if !pipelines.contains(p) {
            pipelines.push(*p);
        }
    }
    let options = RunOptions {
        cap: job.max_generators,
        verify: job.verify,
        coefficients: job.coefficients.as_ref().map(|c| c.1.clone()),
    };
    let mut report = Report {
        parameters: Parameters {
            algebra: job.algebra.name(),
            algebra_fingerprint: fingerprint(&algebra),
            dim: algebra.dim(),
            ring: job.ring.to_string(),
            pipelines: pipelines.clone(),
            max_object: job.max_object.values().collect(),
            max_degree: job.max_degree,
            coefficients: job.coefficients.as_ref().map(|c| c.0.clone()),
            verify: job.verify,
            max_generators: job.max_generators,
        },
        caveats: Caveats {
            truncation: format!("(N, D)-truncated with D = {}", job.max_degree),
            truncated_degrees: (1..=job.max_degree).collect(),
            notes: Vec::new(),
        },
        betti: Table::new(),
        torsion: Table::new(),
        sizes: Table::new(),
        auxiliary: Table::new(),
        coefficients: Table::new(),
        verifications: BTreeMap::new(),
        stabilization: BTreeMap::new(),
        failures: Vec::new(),
        timing: TimingSection::default(),
    };
    for n in job.max_object.values() {
        let policy = TruncationPolicy { max_object: n, max_degree: job.max_degree };
        for &p in &pipelines {
            match run_pipeline(&algebra, p, policy, &options, resources) {
                Ok(o) => {
                    report.betti.entry(p).or_default().insert(n, o.homology.betti.clone());
                    report.torsion.entry(p).or_default().insert(n, torsion_strings(&o.homology));
                    report.sizes.entry(p).or_default().insert(n, o.sizes.clone());
                    if !o.auxiliary.is_empty() {
                        let aux = o.auxiliary.iter().map(|(k, h)| (k.clone(), h.betti.clone())).collect();
                        report.auxiliary.entry(p).or_default().insert(n, aux);
                    }
                    if let Some(h) = &o.coefficient_homology {
                        let uct = o.uct.as_ref().map(|u| {
                            u.degrees
                                .iter()
                                .map(|d| UctLine {
                                    degree: d.degree,
                                    computed: (&d.middle).into(),
                                    predicted: (&d.predicted).into(),
                                    holds: d.holds,
                                })
                                .collect()
                        });
                        let c = CoefficientResult { betti: h.betti.clone(), torsion: torsion_strings(h), uct };
                        report.coefficients.entry(p).or_default().insert(n, c);
                    }
                    for (name, v) in &o.verifications {
                        report.verifications.insert(format!("{p}/N={n}/{name}"), *v);
                    }
                    report.timing.runs.entry(p).or_default().insert(n, o.timings.clone());
                }
                Err(e) => {
                    let (degree, projected) = match &e {
                        Error::ResourceCap { degree, projected, .. } => (Some(*degree), Some(projected.to_string())),
                        _ => (None, None),
                    };
                    report.failures.push(Failure { pipeline: p, max_object: n, message: e.to_string(), degree, projected_generators: projected });
                }
            }
        }
    }
    for (&p, by_n) in &report.betti {
        let rows: Vec<(usize, Vec<usize>)> = by_n.iter().map(|(n, b)| (*n, b.clone())).collect();
        report.stabilization.insert(p, stabilization(&rows));
    }
    if job.verify {
        cross_check(&mut report);
    }
    report.timing.cache = cache.as_ref().map(DiskCache::stats);
    report.timing.total = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Agreement of Betti numbers between pipelines computing the same groups.
/// With a sweep over several `N`, a mismatch confined to degrees that have
/// not stabilized is recorded as a truncation artifact instead of a failure.
fn cross_check(report: &mut Report) {
    let sweep = report.parameters.max_object.len() > 1;
    let mut pairs: Vec<(String, Pipeline, usize, Vec<usize>, Pipeline, Vec<usize>)> = Vec::new();
    for group in [&UNREDUCED[..], &REDUCED[..]] {
        let present: Vec<Pipeline> = group.iter().copied().filter(|p| report.betti.contains_key(p)).collect();
        let Some((&first, rest)) = present.split_first() else { continue };
        for &other in rest {
            for (&n, b) in &report.betti[&other] {
                if let Some(a) = report.betti[&first].get(&n) {
                    pairs.push((format!("{first}={other}"), first, n, a.clone(), other, b.clone()));
                }
            }
        }
    }
    if let Some(epi) = report.betti.get(&Pipeline::Epi) {
        for (&n, b) in epi {
            if let Some(ideal) = report.auxiliary.get(&Pipeline::Reduced).and_then(|m| m.get(&n)).and_then(|a| a.get("ideal")) {
                pairs.push(("reduced_ideal=epi".into(), Pipeline::Reduced, n, ideal.clone(), Pipeline::Epi, b.clone()));
            }
        }
    }
    for (label, p, n, a, q, b) in pairs {
        let differing: Vec<usize> = (0..a.len().min(b.len())).filter(|&d| a[d] != b[d]).collect();
        let verdict = if differing.is_empty() && a.len() == b.len() {
            Verdict::Pass
        } else {
            let unstable = |x: Pipeline, d: usize| report.stabilization.get(&x).and_then(|s| s.get(d)).is_none_or(|s| s.is_none());
            if sweep && !differing.is_empty() && differing.iter().all(|&d| unstable(p, d) || unstable(q, d)) {
                report.caveats.notes.push(format!(
                    "{label} at N={n} differs in degrees {differing:?}, which have not stabilized: truncation artifact"
                ));
                Verdict::Skipped
            } else {
                Verdict::Fail
            }
        };
        report.verifications.insert(format!("agreement/N={n}/{label}"), verdict);
    }
}
