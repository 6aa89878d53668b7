//! Sweeps over a whole Weyl group and the checks run on them: the
//! dimension law, the conjectures on cone equality, Coxeter cones,
//! Ad*-invariance and the subsystem containments.

mod corpus;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::groebner::{containment_witness, radical_member, variety_equal, GroebnerError};
use crate::schubert::{
    apply_derivation, coadjoint_derivation, coxeter_cone, subsystem_embed, tangent_cone,
    BorelGenerator, SchubertError, TangentCone,
};
use crate::weyl::{enumerate, Permutation};

pub use corpus::{
    compare_corpus, equations_to_generators, load_allowlist, load_corpus, Allowlist, AllowlistEntry,
    Anomaly, AnomalyKind, Corpus, CorpusEntry, CorpusError, DiffEntry, DiffReport, DiffSummary, Verdict,
    WitnessSide,
};

/// Where tangent cones come from. The cli plugs a caching source in here.
pub trait ConeSource: Sync {
    fn tangent_cone(&self, w: &Permutation) -> Result<TangentCone, SchubertError>;
}

/// Computes every cone from scratch.
#[derive(Debug, Clone, Copy, Default)]
pub struct Direct;

impl ConeSource for Direct {
    fn tangent_cone(&self, w: &Permutation) -> Result<TangentCone, SchubertError> {
        tangent_cone(w)
    }
}

/// All tangent cones of one rank, in enumeration order.
#[derive(Debug, Clone)]
pub struct ConeSet {
    pub rank: usize,
    pub cones: Vec<TangentCone>,
    index: HashMap<Vec<usize>, usize>,
}

impl ConeSet {
    /// Fans out over `jobs` worker threads; the result keeps enumeration order.
    pub fn compute<S: ConeSource + ?Sized>(rank: usize, source: &S, jobs: usize) -> Result<Self, SchubertError> {
        let perms = enumerate(rank);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool");
        let cones = pool.install(|| {
            perms
                .par_iter()
                .map(|w| source.tangent_cone(w))
                .collect::<Result<Vec<_>, _>>()
        })?;
        Ok(Self::from_cones(rank, cones))
    }

    pub fn from_cones(rank: usize, cones: Vec<TangentCone>) -> Self {
        let index = cones
            .iter()
            .enumerate()
            .map(|(k, c)| (c.w.one_line().to_vec(), k))
            .collect();
        ConeSet { rank, cones, index }
    }

    pub fn get(&self, w: &Permutation) -> Option<&TangentCone> {
        self.index.get(w.one_line()).map(|&k| &self.cones[k])
    }

    pub fn position(&self, w: &Permutation) -> Option<usize> {
        self.index.get(w.one_line()).copied()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub w: String,
    pub detail: String,
}

/// Outcome of one check over one rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub rank: usize,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(name: &str, rank: usize) -> Self {
        CheckReport {
            name: name.to_string(),
            rank,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, w: impl fmt::Display, detail: impl Into<String>) {
        self.failures.push(Failure {
            w: w.to_string(),
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> usize {
        self.checked.saturating_sub(self.failures.len())
    }

    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_pass() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{} rank {}: {}/{} {}",
            self.name,
            self.rank,
            self.passed(),
            self.checked,
            verdict
        )?;
        for x in &self.failures {
            writeln!(f, "  failure {}: {}", x.w, x.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// The structured output record shared by the cli and the corpus parser.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub rank: usize,
    pub w: String,
    pub one_line: Vec<usize>,
    pub length: usize,
    pub dimension: i64,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_class_id: Option<usize>,
    #[serde(default)]
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    #[default]
    Computed,
    PaperCorpus,
}

impl ConeRecord {
    pub fn from_cone(cone: &TangentCone, class_id: Option<usize>) -> Self {
        ConeRecord {
            rank: cone.rank,
            w: cone.w.to_string(),
            one_line: cone.w.one_line().to_vec(),
            length: cone.length,
            dimension: cone.dimension,
            generators: cone.generators().iter().map(|g| g.to_string()).collect(),
            cone_class_id: class_id,
            provenance: Provenance::Computed,
        }
    }
}

/// Partition of the set into variety-equal classes. Classes come out by
/// decreasing dimension, then by their first member in enumeration order;
/// members stay in enumeration order.
pub fn cone_classes(set: &ConeSet) -> Result<Vec<Vec<usize>>, GroebnerError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, cone) in set.cones.iter().enumerate() {
        let ideal = cone.ideal();
        let mut found = None;
        for (c, class) in classes.iter().enumerate() {
            let rep = &set.cones[class[0]];
            // equal varieties have equal dimension; skip the Gröbner work otherwise
            if rep.dimension == cone.dimension && variety_equal(&rep.ideal(), &ideal)? {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => classes[c].push(k),
            None => classes.push(vec![k]),
        }
    }
    classes.sort_by(|a, b| {
        set.cones[b[0]]
            .dimension
            .cmp(&set.cones[a[0]].dimension)
            .then(a[0].cmp(&b[0]))
    });
    Ok(classes)
}

/// `dim C_w = l(w)` for every element.
pub fn check_dimensions(set: &ConeSet) -> CheckReport {
    let mut report = CheckReport::new("dims", set.rank);
    for cone in &set.cones {
        report.checked += 1;
        if !cone.dimension_matches_length() {
            report.fail(&cone.w, format!("dimension {} but length {}", cone.dimension, cone.length));
        }
    }
    report
}

/// `C_w = C_{w^{-1}}` as varieties; scheme-level agreement (equal reduced
/// bases) is counted in the notes.
pub fn check_conjecture2(set: &ConeSet) -> CheckReport {
    let mut report = CheckReport::new("conj2", set.rank);
    let mut scheme_equal = 0;
    for cone in &set.cones {
        report.checked += 1;
        let inv = cone.w.inverse();
        let Some(other) = set.get(&inv) else {
            report.fail(&cone.w, format!("inverse {inv} missing from the sweep"));
            continue;
        };
        if cone.basis == other.basis {
            scheme_equal += 1;
            continue;
        }
        match containment_pair(&cone.ideal(), &other.ideal()) {
            Ok(None) => {}
            Ok(Some(detail)) => report.fail(&cone.w, format!("differs from C_{inv}: {detail}")),
            Err(e) => report.fail(&cone.w, e.to_string()),
        }
    }
    report.notes.push(format!(
        "{scheme_equal}/{} also equal as schemes (identical reduced bases)",
        report.checked
    ));
    report
}

// `None` when the varieties agree, otherwise a description with a witness.
fn containment_pair(a: &crate::Ideal, b: &crate::Ideal) -> Result<Option<String>, GroebnerError> {
    if let Some(g) = containment_witness(a, b)? {
        return Ok(Some(format!("{g} does not vanish on the second variety")));
    }
    if let Some(g) = containment_witness(b, a)? {
        return Ok(Some(format!("{g} does not vanish on the first variety")));
    }
    Ok(None)
}

/// Equal cones force conjugate elements; the converse fails.
pub fn check_conjecture1(set: &ConeSet) -> CheckReport {
    let mut report = CheckReport::new("conj1", set.rank);
    let classes = match cone_classes(set) {
        Ok(c) => c,
        Err(e) => {
            report.fail("-", e.to_string());
            return report;
        }
    };
    for class in &classes {
        report.checked += 1;
        let rep = &set.cones[class[0]].w;
        let names: Vec<String> = class.iter().map(|&k| set.cones[k].w.to_string()).collect();
        if let Some(&k) = class.iter().find(|&&k| !set.cones[k].w.is_conjugate(rep)) {
            report.fail(
                &set.cones[k].w,
                format!("shares its cone with {rep} but has a different cycle type"),
            );
        }
        // the partition came from comparing against representatives; check
        // every pair so the relation is seen to be transitive
        for (x, &a) in class.iter().enumerate() {
            for &b in &class[x + 1..] {
                match variety_equal(&set.cones[a].ideal(), &set.cones[b].ideal()) {
                    Ok(true) => {}
                    Ok(false) => report.fail(
                        &set.cones[b].w,
                        format!("class of {} is not transitive", set.cones[a].w),
                    ),
                    Err(e) => report.fail(&set.cones[b].w, e.to_string()),
                }
            }
        }
        report.notes.push(format!("class {}", names.join(", ")));
    }
    for (x, a) in classes.iter().enumerate() {
        for b in &classes[x + 1..] {
            if let Ok(true) = variety_equal(&set.cones[a[0]].ideal(), &set.cones[b[0]].ideal()) {
                report.fail(&set.cones[b[0]].w, format!("same cone as {}", set.cones[a[0]].w));
            }
        }
    }
    match converse_witness(set, &classes) {
        Some((a, b)) => report.notes.push(format!(
            "converse fails: {} and {} are conjugate with different cones",
            set.cones[a].w, set.cones[b].w
        )),
        None if set.rank >= 2 => report.fail("-", "no conjugate pair with different cones"),
        None => {}
    }
    report
}

/// First pair (in enumeration order) of conjugate elements lying in
/// different cone classes.
pub fn converse_witness(set: &ConeSet, classes: &[Vec<usize>]) -> Option<(usize, usize)> {
    let mut class_of = vec![0; set.len()];
    for (c, class) in classes.iter().enumerate() {
        for &k in class {
            class_of[k] = c;
        }
    }
    for a in 0..set.len() {
        for b in a + 1..set.len() {
            if class_of[a] != class_of[b] && set.cones[a].w.is_conjugate(&set.cones[b].w) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Every Coxeter element's cone is cut out by `x_{ij}`, `i - j ≥ 2`.
pub fn check_coxeter(set: &ConeSet) -> CheckReport {
    let mut report = CheckReport::new("coxeter", set.rank);
    let target = coxeter_cone(set.rank);
    for cone in set.cones.iter().filter(|c| c.w.is_coxeter_element()) {
        report.checked += 1;
        match containment_pair(&cone.ideal(), &target) {
            Ok(None) => {}
            Ok(Some(d)) => report.fail(&cone.w, d),
            Err(e) => report.fail(&cone.w, e.to_string()),
        }
    }
    report
}

/// Each cone is stable under the Borel subalgebra: derivation images of the
/// generators lie in the radical of the cone ideal.
pub fn check_adstar(set: &ConeSet) -> CheckReport {
    let mut report = CheckReport::new("adstar", set.rank);
    let derivations: Vec<(BorelGenerator, Vec<crate::Polynomial>)> = BorelGenerator::all(set.rank)
        .into_iter()
        .map(|xi| (xi, coadjoint_derivation(xi, set.rank)))
        .collect();
    for cone in &set.cones {
        report.checked += 1;
        let ideal = cone.ideal();
        'cone: for (xi, images) in &derivations {
            for g in cone.generators() {
                let d = apply_derivation(g, images);
                match radical_member(&d, &ideal) {
                    Ok(true) => {}
                    Ok(false) => {
                        report.fail(&cone.w, format!("D_{xi}({g}) = {d} leaves the cone"));
                        break 'cone;
                    }
                    Err(e) => {
                        report.fail(&cone.w, e.to_string());
                        break 'cone;
                    }
                }
            }
        }
    }
    report
}

/// Containment evidence for the subsystem conjecture: for every window
/// `A_k ⊂ A_n` and every `w` of the small group, the embedded cone of `w`
/// lies inside the cone of its image. Irreducible-componenthood is not
/// decided.
pub fn check_conjecture3_evidence(small: &ConeSet, big: &ConeSet) -> CheckReport {
    let (k, n) = (small.rank, big.rank);
    let mut report = CheckReport::new(&format!("conj3 A{k}"), n);
    let mut same_dim = 0;
    if k > n {
        report.fail("-", format!("A{k} does not fit in A{n}"));
        return report;
    }
    for start in 1..=n + 1 - k {
        for cone in &small.cones {
            report.checked += 1;
            let label = format!("{} at {start}", cone.w);
            let Some(image) = cone.w.embed(start, n + 1) else {
                report.fail(&label, "window does not fit");
                continue;
            };
            let Some(target) = big.get(&image) else {
                report.fail(&label, format!("{image} missing from the rank {n} sweep"));
                continue;
            };
            let embedded = match subsystem_embed(&cone.ideal(), k, start, n) {
                Ok(e) => e,
                Err(e) => {
                    report.fail(&label, e.to_string());
                    continue;
                }
            };
            match containment_witness(&target.ideal(), &embedded) {
                Ok(None) => {
                    if cone.dimension == target.dimension {
                        same_dim += 1;
                    }
                }
                Ok(Some(g)) => report.fail(&label, format!("{g} from C_{image} does not vanish on the embedded cone")),
                Err(e) => report.fail(&label, e.to_string()),
            }
        }
    }
    report.notes.push(format!(
        "{same_dim}/{} embeddings have dim C_w0 = dim C_w",
        report.checked
    ));
    report
}

#[cfg(test)]
mod tests;
