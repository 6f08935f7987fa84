mod common;

use std::collections::HashSet;
use std::time::Instant;

use regorb::catalogue::{row, RowParams};
use regorb::classify::{audit_listed_group, classify_row, verify_against_table3, ClassificationRecord, ClassifyConfig};
use regorb::cliffnorm::{assemble_full, Bounds};
use regorb::espec::EType;
use regorb::group::{FiniteGroup, GMat, MatSpace};
use regorb::orbits::{census_has_regular, has_regular_orbit, orbit_census};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, ok: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: ok }
        } else {
            Outcome { pass: false, detail: failures.join("; ") }
        }
    }
}

fn classify(n: u32) -> Result<ClassificationRecord, String> {
    let config = ClassifyConfig { oracle: true, ..ClassifyConfig::default() };
    let r = row(n).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let rec = classify_row(&r, &config, None).map_err(|e| format!("row {n}: {e}"))?;
    eprintln!("row {n}: {} groups, max {} ({:.1?})", rec.num_gps, rec.max_order, start.elapsed());
    Ok(rec)
}

fn case_counts(rec: &ClassificationRecord, t: EType) -> Option<(u64, u64)> {
    rec.cases.iter().find(|c| c.etype == t).map(|c| (c.num_gps, c.max_order))
}

/// Runs the rows and checks totals, or per-type counts where given.
fn count_rows(
    expected: &[(u32, Option<EType>, (u64, u64))],
    records: &mut Vec<ClassificationRecord>,
) -> Outcome {
    let mut failures = Vec::new();
    let mut seen: Vec<u32> = Vec::new();
    for &(n, t, want) in expected {
        let rec = match records.iter().find(|r| r.row.row == Some(n)) {
            Some(r) => r.clone(),
            None => match classify(n) {
                Ok(r) => {
                    records.push(r.clone());
                    r
                }
                Err(e) => {
                    failures.push(e);
                    continue;
                }
            },
        };
        if !seen.contains(&n) {
            seen.push(n);
            let report = verify_against_table3(std::slice::from_ref(&rec));
            if !report.all_pass() {
                failures.push(format!("row {n}: verify reports {:?}", report.rows[0].status));
            }
        }
        let got = match t {
            Some(t) => case_counts(&rec, t),
            None => rec.complete.then_some((rec.num_gps, rec.max_order)),
        };
        if got != Some(want) {
            let which = t.map(|t| format!(" {}", t.name())).unwrap_or_default();
            failures.push(format!("row {n}{which}: got {got:?}, want {want:?}"));
        }
    }
    let listed: Vec<String> = expected
        .iter()
        .map(|(n, t, (a, b))| match t {
            Some(t) => format!("{n}{}=({a},{b})", if *t == EType::Plus { "+" } else { "-" }),
            None => format!("{n}=({a},{b})"),
        })
        .collect();
    Outcome::new(failures, listed.join(" "))
}

/// Every class was cross-checked against the census, and each listed
/// group is re-checked from its generators.
fn oracle_agreement(records: &[ClassificationRecord]) -> Outcome {
    let mut failures = Vec::new();
    let mut classes = 0;
    let mut listed = 0;
    for rec in records {
        let space = MatSpace::new(rec.row.p, rec.row.d as usize);
        for case in &rec.cases {
            classes += case.classes;
            if case.oracle_checked != case.classes {
                failures.push(format!("{} {}: {} of {} classes checked", rec.row.label(), case.etype.name(), case.oracle_checked, case.classes));
            }
            for g in &case.groups {
                listed += 1;
                let gens: Vec<GMat> = g.generators.iter().map(|r| space.from_nested(r).unwrap()).collect();
                let grp = regorb::group::enumerate(space, &gens, g.order as usize).unwrap();
                let direct = has_regular_orbit(space, grp.elements(), u64::MAX).unwrap().has_regular;
                let census = orbit_census(space, &gens, u64::MAX).unwrap();
                if direct || census_has_regular(&census, g.order) {
                    failures.push(format!("{} class {}: a regular orbit was found", rec.row.label(), g.class_id));
                }
                if Some(&census) != g.orbit_sizes.as_ref() {
                    failures.push(format!("{} class {}: stored orbit sizes differ", rec.row.label(), g.class_id));
                }
                match audit_listed_group(space, g, &rec.row, case.etype, 0x5eed) {
                    Ok(true) => {}
                    other => failures.push(format!("{} class {}: audit gave {other:?}", rec.row.label(), g.class_id)),
                }
            }
        }
    }
    Outcome::new(failures, format!("{classes} classes and {listed} listed groups agree"))
}

fn pow(x: u128, k: u32) -> u128 {
    x.pow(k)
}

fn symplectic_order(m: u32, r: u128) -> u128 {
    pow(r, m * m) * (1..=m).map(|i| pow(r, 2 * i) - 1).product::<u128>()
}

/// General orthogonal group of a 2m-dimensional quadratic space over GF(2).
fn orthogonal_order(m: u32, plus: bool) -> u128 {
    let top = if plus { pow(2, m) - 1 } else { pow(2, m) + 1 };
    2 * pow(2, m * (m - 1)) * top * (1..m).map(|i| pow(4, i) - 1).product::<u128>()
}

fn general_linear_order(b: u32, q: u128) -> u128 {
    (0..b).map(|i| pow(q, b) - pow(q, i)).product()
}

/// `|Z0| r^{2m} |form group|` in GL(e, q), times the tensor factor
/// GL(b, q) sharing the scalars, times the field automorphisms.
fn expected_normalizer_order(row: &RowParams, t: EType) -> u128 {
    let r = row.r() as u128;
    let m = row.m();
    let q = (row.p as u128).pow(row.a);
    let form = match t {
        EType::Plus => orthogonal_order(m, true),
        EType::Minus => orthogonal_order(m, false),
        _ => symplectic_order(m, r),
    };
    let inner = (q - 1) * pow(r, 2 * m) * form;
    inner * general_linear_order(row.b, q) / (q - 1) * row.a as u128
}

fn structure_formula() -> Outcome {
    let bounds = Bounds::default();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (row, _) in common::in_scope_rows() {
        for t in row.assembly_types() {
            let want = expected_normalizer_order(&row, t);
            let got = assemble_full(&row, t, &bounds)
                .map_err(|e| e.to_string())
                .and_then(|asm| asm.enumerate(bounds.max_group_order).map_err(|e| e.to_string()));
            match got {
                Ok(n) if n.order() as u128 == want => checked += 1,
                Ok(n) => failures.push(format!("{} {}: |N| = {}, formula {want}", row.label(), t.name(), n.order())),
                Err(e) => failures.push(format!("{} {}: {e}", row.label(), t.name())),
            }
        }
    }
    if checked == 0 {
        failures.push("no rows in scope".into());
    }
    Outcome::new(failures, format!("{checked} normalizers match"))
}

/// Every invertible 2x2 matrix over GF(p) that maps the core onto itself.
fn scanned_normalizer(space: MatSpace, core_gens: &[GMat]) -> HashSet<GMat> {
    let core = regorb::group::enumerate(space, core_gens, 1000).unwrap();
    let core_set: HashSet<&GMat> = core.elements().iter().collect();
    let p = space.p;
    let mut out = HashSet::new();
    for code in 0..p.pow(4) {
        let entries: Vec<u32> = (0..4).map(|i| code / p.pow(i) % p).collect();
        let g = space.from_entries(&entries);
        let Some(gi) = space.inverse(&g) else { continue };
        if core_gens.iter().all(|c| core_set.contains(&space.conj(&g, c, &gi))) {
            out.insert(g);
        }
    }
    out
}

fn brute_normalizer() -> Outcome {
    let bounds = Bounds::default();
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for (n, p, types) in [(62, 3, vec![EType::Plus, EType::Minus]), (63, 5, vec![EType::SymplecticType])] {
        let r = row(n).unwrap();
        assert_eq!((r.e, r.p, r.a), (2, p, 1));
        for t in types {
            let asm = assemble_full(&r, t, &bounds).unwrap();
            let assembled: HashSet<GMat> = asm.enumerate(1000).unwrap().elements().iter().cloned().collect();
            let scanned = scanned_normalizer(asm.space, &asm.core_generators);
            sizes.push(format!("{} over GF({p}): {}", t.name(), scanned.len()));
            if assembled != scanned {
                failures.push(format!("{} over GF({p}): assembled {} elements, scan finds {}", t.name(), assembled.len(), scanned.len()));
            }
        }
    }
    Outcome::new(failures, sizes.join(", "))
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let suites: [(&str, fn() -> Result<(), String>); 6] = [
        ("field laws", common::gfp_field_laws),
        ("matrix homomorphisms", common::gfp_matrix_homomorphisms),
        ("kernel and rank", common::gfp_kernel_and_rank),
        ("polynomials", common::gfp_polynomials),
        ("extraspecial invariants", common::espec_invariants),
        ("homogeneity", common::homogeneity_oracle),
    ];
    for (name, suite) in suites {
        if let Err(e) = suite() {
            failures.push(format!("{name}: {e}"));
        }
    }
    let combos = common::espec_combinations().len();
    let groups = match common::subgroup_class_oracle() {
        Ok(n) => n,
        Err(e) => {
            failures.push(e);
            0
        }
    };
    Outcome::new(failures, format!("{combos} extraspecial combinations, {groups} groups in the subgroup-class corpus"))
}

fn main() {
    let start = Instant::now();
    let mut records = Vec::new();
    let mut results: Vec<(u32, Outcome)> = Vec::new();

    results.push((
        1,
        count_rows(
            &[
                (62, None, (2, 48)),
                (63, None, (2, 96)),
                (64, None, (2, 144)),
                (66, None, (2, 240)),
                (67, None, (2, 288)),
                (68, None, (3, 384)),
                (69, None, (2, 432)),
            ],
            &mut records,
        ),
    ));
    results.push((
        2,
        count_rows(
            &[
                (19, Some(EType::Plus), (14, 2304)),
                (19, Some(EType::Minus), (9, 640)),
                (49, None, (4, 1296)),
                (50, None, (2, 2592)),
                (52, None, (1, 3888)),
                (48, None, (7, 1296)),
                (65, None, (13, 384)),
            ],
            &mut records,
        ),
    ));
    results.push((3, count_rows(&[(104, None, (0, 0)), (117, None, (9, 2304))], &mut records)));
    results.push((4, structure_formula()));
    results.push((5, oracle_agreement(&records)));
    results.push((6, brute_normalizer()));
    results.push((7, property_suites()));

    for (n, o) in &results {
        println!("criterion {n}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    eprintln!("acceptance finished in {:.1?}", start.elapsed());
    if results.iter().any(|(_, o)| !o.pass) {
        std::process::exit(1);
    }
}
