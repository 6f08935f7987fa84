//! Row classification: assemble the normalizer, list the classes of
//! subgroups containing the extraspecial core, and keep those that are
//! quasi-primitive with the row's invariants and have no regular orbit.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::catalogue::{known_results, RowParams};
use crate::cliffnorm::{assemble_full, Bounds, CliffError, NormalizerAssembly};
use crate::espec::EType;
use crate::gfp::FFMatrix;
use crate::group::finite::{closure, normal_subgroups, order_histogram};
use crate::group::{subgroup_classes, EnumeratedGroup, Extension, FiniteGroup, GMat, MatSpace, Subgroup};
use crate::modtests::{is_quasiprimitive, is_semilinear, normal_cores, InvariantProfile, NormalCore};
use crate::orbits::{census_has_regular, orbit_census, FixedSpaceTable, RegularOrbitReport, CENSUS_MAX_SPACE};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Largest `|N'/<-I>|` whose full subgroup lattice is searched for groups
/// built on the other sign. Above it only groups containing the core are
/// searched.
pub const CROSS_SIGN_MAX_QUOTIENT: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Cliff(#[from] CliffError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Orbit(#[from] crate::orbits::OrbitError),
    #[error("etype {0} does not occur for {1}")]
    NoSuchCase(String, String),
    #[error("journal: {0}")]
    Journal(String),
    #[error("oracle disagreement on {0}")]
    Oracle(String),
}

#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub bounds: Bounds,
    pub seed: u64,
    /// Run only the case with this core type.
    pub etype: Option<EType>,
    /// Cross-check every class against the orbit census.
    pub oracle: bool,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { bounds: Bounds::default(), seed: DEFAULT_SEED, etype: None, oracle: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub regular: bool,
    /// How the regular-orbit verdict was reached.
    pub by: VerdictSource,
    /// Quasi-primitive with the row's invariants; only evaluated for
    /// groups without a regular orbit.
    pub qualifies: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictSource {
    Tested,
    Size,
    Pruned,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct JournalEntry {
    row: String,
    etype: EType,
    class: usize,
    verdict: Verdict,
}

/// Append-only JSON-lines record of per-class verdicts.
pub struct Journal {
    path: PathBuf,
    known: BTreeMap<(String, EType, usize), Verdict>,
    out: Mutex<File>,
}

impl Journal {
    pub fn open(dir: &Path) -> Result<Self, ClassifyError> {
        let err = |e: std::io::Error| ClassifyError::Journal(e.to_string());
        std::fs::create_dir_all(dir).map_err(err)?;
        let path = dir.join("journal.jsonl");
        let mut known = BTreeMap::new();
        if path.exists() {
            for (n, line) in BufReader::new(File::open(&path).map_err(err)?).lines().enumerate() {
                let line = line.map_err(err)?;
                if line.trim().is_empty() {
                    continue;
                }
                // a torn final line from an interrupted run is dropped
                match serde_json::from_str::<JournalEntry>(&line) {
                    Ok(e) => {
                        known.insert((e.row, e.etype, e.class), e.verdict);
                    }
                    Err(e) => eprintln!("journal line {}: ignored ({e})", n + 1),
                }
            }
        }
        let out = OpenOptions::new().create(true).append(true).open(&path).map_err(err)?;
        Ok(Journal { path, known, out: Mutex::new(out) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn get(&self, row: &str, etype: EType, class: usize) -> Option<Verdict> {
        self.known.get(&(row.to_string(), etype, class)).copied()
    }

    fn append(&self, row: &str, etype: EType, class: usize, verdict: Verdict) {
        let line = serde_json::to_string(&JournalEntry { row: row.to_string(), etype, class, verdict }).unwrap();
        let mut f = self.out.lock().unwrap();
        let _ = writeln!(f, "{line}");
    }
}

/// A group in the final list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ListedGroup {
    pub class_id: usize,
    pub order: u64,
    pub class_size: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub profile: InvariantProfile,
    pub order_histogram: Vec<(u64, usize)>,
    pub orbit_sizes: Option<BTreeMap<u64, u64>>,
    pub certificate: RegularOrbitReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseRecord {
    pub etype: EType,
    pub normalizer_order: u64,
    pub core_order: u64,
    /// Order of the subgroup every searched class contains.
    pub kernel_order: u64,
    /// Groups whose core has the other sign were searched too.
    pub cross_sign: bool,
    pub quotient_order: u64,
    pub classes: usize,
    pub tested: usize,
    pub pruned: usize,
    pub oracle_checked: usize,
    pub groups: Vec<ListedGroup>,
    pub num_gps: u64,
    pub max_order: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub row: RowParams,
    pub cases: Vec<CaseRecord>,
    pub num_gps: u64,
    pub max_order: u64,
    /// False when the row lies outside the configured bounds.
    pub complete: bool,
    /// Set when only some cases were run.
    pub restricted_to: Option<EType>,
    pub skipped: Option<String>,
    /// Pairs of listed groups from different cases with equal invariants.
    pub fuse_collisions: Vec<(EType, usize, EType, usize)>,
}

/// Core types searched for a row.
pub fn case_types(row: &RowParams) -> Vec<EType> {
    if row.r() != 2 {
        vec![EType::OddExponent]
    } else if row.unified() {
        vec![EType::SymplecticType, EType::Plus, EType::Minus]
    } else {
        vec![EType::Plus, EType::Minus]
    }
}

fn assembly_type(row: &RowParams, case: EType) -> EType {
    if row.unified() {
        EType::SymplecticType
    } else {
        case
    }
}

/// One search case: the group `N'` normalizing the core, with the core
/// as the kernel of the quotient map.
pub struct Case {
    pub etype: EType,
    pub assembly_order: u64,
    /// `N'` over the search kernel: the core, or `<-I>` in a split row
    /// with `r = 2`, where groups built on the other sign also count.
    pub ext: Extension,
    pub core: Subgroup,
    /// Whether the kernel is `<-I>`.
    pub cross_sign: bool,
}

fn core_generators(asm: &NormalizerAssembly, etype: EType) -> Vec<GMat> {
    if asm.etype == etype {
        return asm.core_generators.clone();
    }
    let field = asm.espec.field().clone();
    let ib = FFMatrix::identity(&field, asm.row.b as usize);
    asm.espec
        .extraspecial_subgroup_generators(etype)
        .iter()
        .map(|g| asm.space.from_ff(&g.kron(&ib).blow_up()))
        .collect()
}

/// `N_N(C)` by scanning the elements of N.
fn normalizer_of_core(n: &EnumeratedGroup, core: &[GMat]) -> EnumeratedGroup {
    let s = n.space();
    let core_set = crate::group::enumerate(s, core, n.order()).expect("core inside N");
    let members: FxHashSet<&GMat> = core_set.elements().iter().collect();
    let els: Vec<u32> = (0..n.order() as u32)
        .into_par_iter()
        .filter(|&x| {
            let g = n.element(x);
            let gi = n.element(n.inv(x));
            core.iter().all(|c| members.contains(&s.conj(g, c, gi)))
        })
        .collect();
    let sub = Subgroup::from_elements(n, els);
    let gens: Vec<GMat> = sub.gens().iter().map(|&i| n.element(i).clone()).collect();
    let elements = sub.elements().iter().map(|&i| n.element(i).clone()).collect();
    EnumeratedGroup::from_closed(s, elements, &gens)
}

fn minus_identity(space: MatSpace) -> GMat {
    let f = crate::gfp::Field::prime(space.p).expect("prime");
    space.from_ff(&FFMatrix::scalar(&f, space.d, f.from_int(-1)))
}

/// Builds the search cases of a row, assembling each normalizer once.
pub fn build_cases(row: &RowParams, config: &ClassifyConfig) -> Result<Vec<Case>, ClassifyError> {
    let mut types = case_types(row);
    if let Some(t) = config.etype {
        if !types.contains(&t) {
            return Err(ClassifyError::NoSuchCase(t.name().into(), row.label()));
        }
        types.retain(|&x| x == t);
    }
    let mut assemblies: BTreeMap<EType, (NormalizerAssembly, EnumeratedGroup)> = BTreeMap::new();
    let mut cases = Vec::new();
    for t in types {
        let at = assembly_type(row, t);
        if !assemblies.contains_key(&at) {
            let asm = assemble_full(row, at, &config.bounds)?;
            let n = asm.enumerate(config.bounds.max_group_order)?;
            assemblies.insert(at, (asm, n));
        }
        let (asm, n) = &assemblies[&at];
        let core = core_generators(asm, t);
        let np = if t == at { n.clone() } else { normalizer_of_core(n, &core) };
        let cross_sign = row.r() == 2 && !row.unified() && np.order() / 2 <= CROSS_SIGN_MAX_QUOTIENT;
        let kernel = if cross_sign { vec![minus_identity(asm.space)] } else { core.clone() };
        let ext = Extension::new(np, &kernel)?;
        let idx: Vec<u32> = core.iter().map(|g| ext.flat_of_matrix(g).expect("core inside N'")).collect();
        let core = closure(&ext, &idx);
        cases.push(Case { etype: t, assembly_order: n.order() as u64, ext, core, cross_sign });
    }
    Ok(cases)
}

/// Subgroup classes of `N'/core`, lifted: the candidates of one case.
pub fn candidate_classes(case: &Case) -> Result<Vec<(usize, usize, Subgroup)>, ClassifyError> {
    let lat = subgroup_classes(&case.ext.quotient(), true, None)?;
    Ok(lat.classes.iter().map(|c| (c.id, c.class_size, case.ext.lift(&c.rep))).collect())
}

fn matrices(ext: &Extension, idx: &[u32]) -> Vec<FFMatrix> {
    let s = ext.group().space();
    let f = crate::gfp::Field::prime(s.p).expect("prime");
    idx.iter().map(|&x| s.to_ff_in(ext.matrix(x), &f)).collect()
}

/// The normal core that places `cores` in the `etype` case of `row`, if
/// any. Symplectic-type cores are compared among themselves and
/// extraspecial ones among themselves: the largest must have the row's `e`
/// and one of that size the row's `a`. In a unified row a group goes to the
/// first of S, E+, E- that it fits. In a split row a group whose
/// extraspecial cores all have the other sign is still returned, with that
/// core.
pub fn fitting_core(row: &RowParams, etype: EType, cores: &[NormalCore]) -> Option<NormalCore> {
    let fits = |t: EType| {
        let family: Vec<&NormalCore> =
            cores.iter().filter(|c| (c.etype == EType::SymplecticType) == (t == EType::SymplecticType)).collect();
        let top = family.iter().map(|c| c.e).max()?;
        if top != row.e {
            return None;
        }
        family.into_iter().find(|c| c.etype == t && c.e == row.e && c.a == row.a).copied()
    };
    if row.unified() {
        let order = [EType::SymplecticType, EType::Plus, EType::Minus];
        let first = order.iter().find_map(|&t| fits(t))?;
        return (first.etype == etype).then_some(first);
    }
    let other = match etype {
        EType::Plus => Some(EType::Minus),
        EType::Minus => Some(EType::Plus),
        _ => None,
    };
    fits(etype).or_else(|| other.and_then(fits))
}

fn profile_of(row: &RowParams, core: &NormalCore) -> InvariantProfile {
    InvariantProfile {
        e: core.e,
        r: row.r(),
        a: core.a,
        b: row.d / (core.e * core.a),
        u: core.u,
        etype: Some(core.etype),
    }
}

/// Whether `h` is counted in the case: it fits the row, is
/// quasi-primitive, and unless its core has the other sign it contains the
/// case core itself. A group with a core of the case type that is not the
/// case core is conjugate in GL(d, p) to one that contains it.
fn qualifies(ext: &Extension, h: &Subgroup, case: &Case, row: &RowParams, seed: u64) -> Option<InvariantProfile> {
    let s = ext.group().space();
    let normals = normal_subgroups(ext, h);
    let cores = normal_cores(ext, &normals, row.r(), s.p);
    let core = fitting_core(row, case.etype, &cores)?;
    if is_semilinear(ext, h, &normals) {
        return None;
    }
    if core.etype == case.etype && !case.core.gens().iter().all(|&x| h.contains(x)) {
        return None;
    }
    let ng: Vec<Vec<FFMatrix>> = normals
        .iter()
        .filter(|n| !n.elements().iter().all(|&x| s.is_scalar(ext.matrix(x))))
        .map(|n| matrices(ext, n.gens()))
        .collect();
    is_quasiprimitive(&matrices(ext, h.gens()), &ng, s.d, seed).holds().then(|| profile_of(row, &core))
}

fn run_case(
    row: &RowParams,
    case: &Case,
    config: &ClassifyConfig,
    journal: Option<&Journal>,
) -> Result<CaseRecord, ClassifyError> {
    let ext = &case.ext;
    let space = ext.group().space();
    let label = row.label();
    let v = space.space_size().expect("bounded");
    let lat = subgroup_classes(&ext.quotient(), true, None)?;
    let n = lat.classes.len();
    let table = FixedSpaceTable::new(ext, config.bounds.max_space)?;
    let lifts: Vec<Subgroup> = lat.classes.iter().map(|c| ext.lift(&c.rep)).collect();
    let mut verdicts: Vec<Option<Verdict>> = vec![None; n];
    let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in &lat.classes {
        by_order.entry(c.order()).or_default().push(c.id);
    }
    // Largest groups first; a regular orbit passes down to all subgroups.
    for (_, layer) in by_order.iter().rev() {
        let todo: Vec<usize> = layer.iter().copied().filter(|&c| verdicts[c].is_none()).collect();
        let found: Vec<Result<Verdict, ClassifyError>> = todo
            .par_iter()
            .map(|&c| {
                if let Some(v) = journal.and_then(|j| j.get(&label, case.etype, c)) {
                    return Ok(v);
                }
                let h = &lifts[c];
                let verdict = if h.order() as u64 >= v {
                    Verdict { regular: false, by: VerdictSource::Size, qualifies: None }
                } else {
                    Verdict { regular: table.report(h)?.has_regular, by: VerdictSource::Tested, qualifies: None }
                };
                Ok(verdict)
            })
            .collect();
        for (&c, v) in todo.iter().zip(found) {
            let v = v?;
            verdicts[c] = Some(v);
            if v.regular {
                let mut stack = vec![c];
                while let Some(x) = stack.pop() {
                    for &b in &lat.classes[x].below {
                        if verdicts[b].is_none() {
                            verdicts[b] = Some(Verdict { regular: true, by: VerdictSource::Pruned, qualifies: None });
                            stack.push(b);
                        }
                    }
                }
            }
        }
    }
    let mut verdicts: Vec<Verdict> = verdicts.into_iter().map(|v| v.expect("every class decided")).collect();
    let no_regular: Vec<usize> = (0..n).filter(|&c| !verdicts[c].regular).collect();
    let profiles: Vec<Option<InvariantProfile>> = no_regular
        .par_iter()
        .map(|&c| match verdicts[c].qualifies {
            Some(false) => None,
            _ => qualifies(ext, &lifts[c], case, row, config.seed),
        })
        .collect();
    for (&c, prof) in no_regular.iter().zip(&profiles) {
        verdicts[c].qualifies = Some(prof.is_some());
    }
    if let Some(j) = journal {
        for (c, v) in verdicts.iter().enumerate() {
            if j.get(&label, case.etype, c) != Some(*v) {
                j.append(&label, case.etype, c, *v);
            }
        }
    }
    let mut oracle_checked = 0;
    if config.oracle && v <= CENSUS_MAX_SPACE {
        let bad: Vec<usize> = (0..n)
            .into_par_iter()
            .filter(|&c| {
                let h = &lifts[c];
                let gens: Vec<GMat> = h.gens().iter().map(|&x| ext.matrix(x).clone()).collect();
                let census = orbit_census(space, &gens, CENSUS_MAX_SPACE).expect("bounded");
                let direct = table.report(h).expect("bounded").has_regular;
                census_has_regular(&census, h.order() as u64) != direct || direct != verdicts[c].regular
            })
            .collect();
        if let Some(&c) = bad.first() {
            return Err(ClassifyError::Oracle(format!("{label} {} class {c}", case.etype.name())));
        }
        oracle_checked = n;
    }
    let mut groups = Vec::new();
    for (&c, prof) in no_regular.iter().zip(profiles) {
        let Some(profile) = prof else { continue };
        let h = &lifts[c];
        let certificate = table.report(h)?;
        let gens = h.gens().iter().map(|&x| space.rows(ext.matrix(x))).collect();
        let orbit_sizes = if v <= CENSUS_MAX_SPACE {
            let g: Vec<GMat> = h.gens().iter().map(|&x| ext.matrix(x).clone()).collect();
            Some(orbit_census(space, &g, CENSUS_MAX_SPACE)?)
        } else {
            None
        };
        groups.push(ListedGroup {
            class_id: c,
            order: h.order() as u64,
            class_size: lat.classes[c].class_size,
            generators: gens,
            profile,
            order_histogram: order_histogram(ext, h),
            orbit_sizes,
            certificate,
        });
    }
    groups.sort_by(|a, b| b.order.cmp(&a.order).then(a.class_id.cmp(&b.class_id)));
    let pruned = verdicts.iter().filter(|v| v.by == VerdictSource::Pruned).count();
    Ok(CaseRecord {
        etype: case.etype,
        normalizer_order: ext.order() as u64,
        core_order: case.core.order() as u64,
        kernel_order: ext.core_order() as u64,
        cross_sign: case.cross_sign,
        quotient_order: ext.quotient_order() as u64,
        classes: n,
        tested: n - pruned,
        pruned,
        oracle_checked,
        num_gps: groups.len() as u64,
        max_order: groups.iter().map(|g| g.order).max().unwrap_or(0),
        groups,
    })
}

fn fuse_collisions(cases: &[CaseRecord]) -> Vec<(EType, usize, EType, usize)> {
    let mut out = Vec::new();
    for (i, a) in cases.iter().enumerate() {
        for b in &cases[i + 1..] {
            for x in &a.groups {
                for y in &b.groups {
                    if x.order == y.order && x.order_histogram == y.order_histogram && x.orbit_sizes == y.orbit_sizes {
                        out.push((a.etype, x.class_id, b.etype, y.class_id));
                    }
                }
            }
        }
    }
    out
}

pub fn classify_row(
    row: &RowParams,
    config: &ClassifyConfig,
    journal: Option<&Journal>,
) -> Result<ClassificationRecord, ClassifyError> {
    let skipped = |reason: String| ClassificationRecord {
        row: *row,
        cases: Vec::new(),
        num_gps: 0,
        max_order: 0,
        complete: false,
        restricted_to: config.etype,
        skipped: Some(reason),
        fuse_collisions: Vec::new(),
    };
    let cases = match build_cases(row, config) {
        Ok(c) => c,
        Err(ClassifyError::Cliff(CliffError::OutOfScope(why))) => return Ok(skipped(why)),
        Err(e) => return Err(e),
    };
    let records: Vec<CaseRecord> =
        cases.iter().map(|c| run_case(row, c, config, journal)).collect::<Result<_, _>>()?;
    let collisions = fuse_collisions(&records);
    for (a, x, b, y) in &collisions {
        eprintln!("{}: {} class {x} and {} class {y} share all invariants", row.label(), a.name(), b.name());
    }
    Ok(ClassificationRecord {
        row: *row,
        num_gps: records.iter().map(|c| c.num_gps).sum(),
        max_order: records.iter().map(|c| c.max_order).max().unwrap_or(0),
        cases: records,
        complete: true,
        restricted_to: config.etype,
        skipped: None,
        fuse_collisions: collisions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDiff {
    pub field: String,
    pub expected: u64,
    pub got: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Pass,
    Mismatch(Vec<FieldDiff>),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowVerdict {
    pub label: String,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub rows: Vec<RowVerdict>,
}

impl DiffReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Pass)
    }
    pub fn any_mismatch(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.status, RowStatus::Mismatch(_)))
    }
}

impl std::fmt::Display for DiffReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.rows {
            match &r.status {
                RowStatus::Pass => writeln!(f, "{}: pass", r.label)?,
                RowStatus::Skipped(why) => writeln!(f, "{}: skipped ({why})", r.label)?,
                RowStatus::Mismatch(d) => {
                    for x in d {
                        writeln!(f, "{}: {} expected {} got {}", r.label, x.field, x.expected, x.got)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Compares records with the known counts. Entries tied to one
/// extraspecial type are matched per case, the others against the sum
/// over all cases; rows without entries must have no groups.
pub fn verify_against_table3(records: &[ClassificationRecord]) -> DiffReport {
    let rows = records
        .iter()
        .map(|rec| {
            let label = rec.row.label();
            if !rec.complete {
                return RowVerdict { label, status: RowStatus::Skipped(rec.skipped.clone().unwrap_or_default()) };
            }
            let known = rec.row.row.map(known_results).unwrap_or_default();
            let typed = known.iter().any(|k| k.etype.is_some());
            let mut diffs = Vec::new();
            let mut check = |field: String, expected: u64, got: u64| {
                if expected != got {
                    diffs.push(FieldDiff { field, expected, got });
                }
            };
            if typed {
                for k in &known {
                    let t = k.etype.expect("typed");
                    match rec.cases.iter().find(|c| c.etype == t) {
                        Some(c) => {
                            check(format!("{} num_gps", t.name()), k.num_groups, c.num_gps);
                            check(format!("{} max_order", t.name()), k.max_order, c.max_order);
                        }
                        None => {
                            return RowVerdict { label, status: RowStatus::Skipped(format!("{} case not run", t.name())) }
                        }
                    }
                }
            } else {
                if rec.restricted_to.is_some() {
                    return RowVerdict { label, status: RowStatus::Skipped("only some cases were run".into()) };
                }
                let (n, m) = known.first().map(|k| (k.num_groups, k.max_order)).unwrap_or((0, 0));
                check("num_gps".into(), n, rec.num_gps);
                check("max_order".into(), m, rec.max_order);
            }
            let status = if diffs.is_empty() { RowStatus::Pass } else { RowStatus::Mismatch(diffs) };
            RowVerdict { label, status }
        })
        .collect();
    DiffReport { rows }
}

pub const CSV_HEADER: &str = "No.,e,p,d,a,b,num gps,max |G|,Note";

/// One CSV line per reported count; typed rows get one line per case.
pub fn csv_lines(rec: &ClassificationRecord) -> Vec<String> {
    let r = &rec.row;
    let no = r.row.map(|n| n.to_string()).unwrap_or_default();
    let prefix = format!("{no},{},{},{},{},{}", r.e, r.p, r.d, r.a, r.b);
    if !rec.complete {
        return vec![format!("{prefix},,,skipped")];
    }
    let typed = r.row.map(known_results).unwrap_or_default().iter().any(|k| k.etype.is_some());
    if typed {
        rec.cases
            .iter()
            .map(|c| {
                let note = match c.etype {
                    EType::Plus => "E+",
                    EType::Minus => "E-",
                    EType::SymplecticType => "S",
                    EType::OddExponent => "",
                };
                format!("{prefix},{},{},{note}", c.num_gps, c.max_order)
            })
            .collect()
    } else {
        vec![format!("{prefix},{},{},", rec.num_gps, rec.max_order)]
    }
}

pub fn write_csv(records: &[ClassificationRecord], w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for rec in records {
        for line in csv_lines(rec) {
            writeln!(w, "{line}")?;
        }
    }
    Ok(())
}

/// Re-checks a listed group from its generators alone: solvable,
/// quasi-primitive, a core fitting the row, and no regular orbit.
pub fn audit_listed_group(
    space: MatSpace,
    g: &ListedGroup,
    row: &RowParams,
    etype: EType,
    seed: u64,
) -> Result<bool, ClassifyError> {
    let gens: Vec<GMat> = g.generators.iter().map(|r| space.from_nested(r).expect("valid matrix")).collect();
    let grp = crate::group::enumerate(space, &gens, g.order as usize)?;
    if grp.order() as u64 != g.order {
        return Ok(false);
    }
    let whole = Subgroup::whole(&grp);
    if !crate::group::finite::is_solvable(&grp, &whole) {
        return Ok(false);
    }
    let report = crate::orbits::has_regular_orbit(space, grp.elements(), u64::MAX)?;
    if report.has_regular {
        return Ok(false);
    }
    let normals = normal_subgroups(&grp, &whole);
    let cores = normal_cores(&grp, &normals, row.r(), space.p);
    if fitting_core(row, etype, &cores).is_none() || is_semilinear(&grp, &whole, &normals) {
        return Ok(false);
    }
    let f = crate::gfp::Field::prime(space.p).expect("prime");
    let mats = |s: &Subgroup| s.gens().iter().map(|&x| space.to_ff_in(grp.element(x), &f)).collect::<Vec<_>>();
    let ng: Vec<Vec<FFMatrix>> = normals.iter().map(mats).collect();
    Ok(is_quasiprimitive(&mats(&whole), &ng, space.d, seed).holds())
}
