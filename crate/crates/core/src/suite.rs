//! The verification battery, one entry per acceptance criterion.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use serde::Serialize;

use crate::cells::composition_laws;
use crate::complex::{equal_presentation, validate_complex, BasedComplex, ComplexBuilder};
use crate::decomposition::{boundary_decomposition_check, top_cell_decomposition_check, Family};
use crate::error::Result;
use crate::fixtures;
use crate::io::{emit_complex, emit_map, parse_complex, parse_map};
use crate::map::{compose, first_non_identity};
use crate::ops::duality::{cube_selfduality, dual, swap_iso_co, swap_iso_op, Duality};
use crate::ops::join::{join, join_name, join_pushout, left_name, right_name, Orientation};
use crate::ops::suspension::susp_coop_iso;
use crate::random::{random_steiner_complex, random_theta_spec, rng};
use crate::report::CheckReport;
use crate::retraction::{
    ell_square_check, phi_map, q2, rho_map, s2, section_ell, section_q_cube, section_xi, theta_retract_into_oriental,
    xi, zeta_theta_pair,
};
use crate::shapes::{
    antioriental, boundary_disk, cube, disk, interval, oriental, oriental_via_join, point_name, subset, theta, unit,
};
use crate::steiner::{atom_table, is_steiner, loop_analysis, unitality_check};

/// Size bounds for the battery. [`SuiteConfig::default`] is the command-line
/// default; [`SuiteConfig::acceptance`] uses the full acceptance ranges.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub disk_max: usize,
    pub cube_max: usize,
    pub oriental_max: usize,
    pub random_thetas: usize,
    pub random_complexes: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { disk_max: 6, cube_max: 5, oriental_max: 6, random_thetas: 25, random_complexes: 50, seed: 2024 }
    }
}

impl SuiteConfig {
    pub fn acceptance() -> Self {
        SuiteConfig { disk_max: 8, cube_max: 6, oriental_max: 8, ..Self::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub number: u8,
    pub title: &'static str,
    pub report: CheckReport,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed
    }
}

pub const TITLES: [&str; 8] = [
    "validity battery",
    "counting oracles",
    "construction cross-check",
    "duality identities",
    "retraction identities",
    "decomposition colimits",
    "atoms and cell calculus",
    "robustness",
];

fn run(number: u8, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> CriterionOutcome {
    let start = Instant::now();
    let mut report = CheckReport::new();
    if let Err(e) = body(&mut report) {
        report.fail("ERROR", format!("{}: {e}", e.code()));
    }
    CriterionOutcome { number, title: TITLES[number as usize - 1], report, elapsed: start.elapsed() }
}

/// The library shapes named as on the command line.
pub fn library(config: &SuiteConfig) -> Result<Vec<(String, Arc<BasedComplex>)>> {
    let mut out = Vec::new();
    for n in 0..=config.disk_max {
        out.push((format!("disk {n}"), disk(n)?));
        out.push((format!("boundary-disk {n}"), boundary_disk(n)?));
    }
    for n in 0..=config.cube_max {
        out.push((format!("cube {n}"), cube(n)?));
    }
    for n in 0..=config.oriental_max {
        out.push((format!("oriental {n}"), oriental(n)?));
        out.push((format!("antioriental {n}"), antioriental(n)?));
    }
    Ok(out)
}

pub fn validity(config: &SuiteConfig) -> CriterionOutcome {
    run(1, |r| {
        for (label, c) in library(config)? {
            r.merge(&label, is_steiner(&c));
        }
        let mut g = rng(config.seed);
        for k in 0..config.random_thetas {
            let spec = random_theta_spec(&mut g, 4);
            let t = theta(&spec)?;
            r.merge(&format!("theta#{k} {:?}/{:?}", spec.dims, spec.glue), is_steiner(&t));
        }
        Ok(())
    })
}

pub fn counting(config: &SuiteConfig) -> CriterionOutcome {
    run(2, |r| {
        for n in 0..=config.cube_max {
            let c = cube(n)?.graded_counts();
            let ok = (0..=n).all(|k| c.get(&k).copied().unwrap_or(0) == binomial(n, k) << (n - k))
                && c.values().sum::<usize>() == 3usize.pow(n as u32);
            r.check(&format!("cube {n}"), ok, || format!("counts {c:?}"));
        }
        for n in 0..=config.oriental_max {
            let c = oriental(n)?.graded_counts();
            let ok = (0..=n).all(|k| c.get(&k).copied().unwrap_or(0) == binomial(n + 1, k + 1));
            r.check(&format!("oriental {n}"), ok, || format!("counts {c:?}"));
        }
        Ok(())
    })
}

/// `A ⋄ ℤ` written out as `A ⊕ A[1] ⊕ ℤ`: `d J(x) = s(-1)^|x| L(x) + J(dx)`
/// for `|x| > 0` and `d J(x) = s(L(x) - ε(x) R(pt))` for vertices, with
/// augmentation `ε + id`. `s = 1` is the formula as displayed.
pub fn join_with_point_formula(a: &BasedComplex, s: i64) -> Result<Arc<BasedComplex>> {
    let mut b = ComplexBuilder::new();
    let pt = point_name();
    b.add_generator(0, right_name(&pt)).set_augmentation(right_name(&pt), BigInt::one());
    for (q, i, x) in a.iter() {
        b.add_generator(q, left_name(x)).add_generator(q + 1, join_name(x, &pt));
        let sign = BigInt::from(if q % 2 == 0 { s } else { -s });
        let mut dj = vec![(left_name(x), sign)];
        if q == 0 {
            b.set_augmentation(left_name(x), a.augmentation_of(i).clone());
            dj.push((right_name(&pt), -(BigInt::from(s) * a.augmentation_of(i))));
        } else {
            let d = a.boundary_terms(q, i);
            b.set_boundary(left_name(x), d.iter().map(|(&j, k)| (left_name(a.name(q - 1, j)), k.clone())).collect());
            dj.extend(d.iter().map(|(&j, k)| (join_name(a.name(q - 1, j), &pt), k.clone())));
        }
        dj.retain(|(_, k)| *k != BigInt::from(0));
        b.set_boundary(join_name(x, &pt), dj);
    }
    Ok(Arc::new(b.build()?))
}

pub fn construction(config: &SuiteConfig) -> CriterionOutcome {
    run(3, |r| {
        for n in 0..=config.oriental_max.min(6) {
            let ok = equal_presentation(&*oriental_via_join(n)?, &*oriental(n)?);
            r.check(&format!("oriental_via_join {n}"), ok, || "presentations differ".into());
        }
        let mut shapes: Vec<(String, Arc<BasedComplex>)> = Vec::new();
        for k in 0..=3 {
            shapes.push((format!("disk {k}"), disk(k)?));
            shapes.push((format!("oriental {k}"), oriental(k)?));
        }
        shapes.push(("cube 2".into(), cube(2)?));
        for (label, a) in shapes {
            let displayed = join_with_point_formula(&a, 1)?;
            let reversed = join_pushout(&a, &unit(), Orientation::Reversed)?.complex;
            r.check(&format!("{label} ⋄ pt displayed = reversed-interval pushout"), *reversed == *displayed, || {
                "differentials differ".into()
            });
            let standard = join(&a, &unit())?;
            let flipped = join_with_point_formula(&a, -1)?;
            r.check(&format!("{label} ⋄ pt with cross signs flipped = join"), *standard == *flipped, || {
                "differentials differ".into()
            });
        }
        Ok(())
    })
}

pub fn dualities(config: &SuiteConfig) -> CriterionOutcome {
    run(4, |r| {
        let samples = [interval(), disk(2)?, oriental(2)?, cube(2)?, oriental(3)?, theta(&crate::shapes::ThetaSpec::pasting(vec![2, 1], vec![0]))?];
        for (k, c) in samples.iter().enumerate() {
            for w in [Duality::Op, Duality::Co, Duality::Coop] {
                r.check(&format!("involution {w:?} #{k}"), *dual(&dual(c, w), w) == **c, || "not involutive".into());
            }
        }
        let pairs = [("interval", interval()), ("disk 2", disk(2)?), ("oriental 2", oriental(2)?), ("cube 2", cube(2)?)];
        for (na, a) in &pairs {
            for (nb, b) in &pairs {
                r.merge(&format!("swap_op[{na}, {nb}]"), swap_iso_op(a, b)?.verify()?);
                r.merge(&format!("swap_co[{na}, {nb}]"), swap_iso_co(a, b)?.verify()?);
            }
        }
        for n in 0..=5 {
            for w in [Duality::Op, Duality::Co] {
                r.merge(&format!("cube_selfduality {n} {w:?}"), cube_selfduality(n, w)?.verify()?);
            }
        }
        let mut g = rng(config.seed ^ 0x5eed);
        for k in 0..config.random_complexes {
            let c = random_steiner_complex(&mut g, 4, 200)?;
            r.merge(&format!("susp_coop#{k}"), susp_coop_iso(&c)?.verify()?);
        }
        Ok(())
    })
}

pub fn retractions(config: &SuiteConfig) -> CriterionOutcome {
    run(5, |r| {
        r.push("q2∘s2 = id", first_non_identity(&compose(&s2()?, &q2()?)?));
        for (label, a) in [("unit", unit()), ("interval", interval()), ("oriental 2", oriental(2)?), ("cube 2", cube(2)?)]
        {
            r.push(&format!("rho∘phi = id [{label}]"), first_non_identity(&compose(&phi_map(&a)?, &rho_map(&a)?)?));
        }
        for n in 0..=4 {
            r.merge(&format!("section_q_cube {n}"), section_q_cube(n)?.verify()?);
            r.merge(&format!("section_xi {n}"), section_xi(n)?.verify()?);
        }
        r.check("xi 2 = q2", xi(2)? == q2()?, || "maps differ".into());
        for n in 0..=3 {
            r.merge(&format!("ell square {n}"), ell_square_check(n)?);
            r.merge(&format!("section_ell {n}"), section_ell(n)?.verify()?);
        }
        for total in 0..=4 {
            for n in 0..=total {
                r.merge(&format!("zeta/theta ({n},{})", total - n), zeta_theta_pair(n, total - n)?.verify()?);
            }
        }
        let mut g = rng(config.seed ^ 0x7e7a);
        for k in 0..10 {
            let spec = random_theta_spec(&mut g, 4);
            let t = theta_retract_into_oriental(&spec)?;
            r.merge(&format!("theta retract #{k} {:?}/{:?} into Δ{}", spec.dims, spec.glue, t.simplex_dim), t.verify()?);
        }
        Ok(())
    })
}

pub fn decompositions(config: &SuiteConfig) -> CriterionOutcome {
    run(6, |r| {
        for (family, max) in [(Family::Oriental, config.oriental_max.min(6)), (Family::Cube, config.cube_max.min(5))] {
            let label = format!("{family:?}").to_lowercase();
            for n in 2..=max {
                r.merge(&format!("boundary {label} {n}"), boundary_decomposition_check(family, n)?);
                r.merge(&format!("top cell {label} {n}"), top_cell_decomposition_check(family, n)?);
            }
        }
        Ok(())
    })
}

pub fn atoms(config: &SuiteConfig) -> CriterionOutcome {
    run(7, |r| {
        for (label, c) in library(config)? {
            r.merge(&label, unitality_check(&c));
        }
        let d2 = oriental(2)?;
        let t = atom_table(&d2, &subset("012"))?;
        let table_ok = *t.minus(1) == d2.chain_from_strs(1, &[("(0.2)", 1)])?
            && *t.plus(1) == d2.chain_from_strs(1, &[("(0.1)", 1), ("(1.2)", 1)])?
            && *t.minus(0) == d2.chain_from_strs(0, &[("(0)", 1)])?
            && *t.plus(0) == d2.chain_from_strs(0, &[("(2)", 1)])?;
        r.check("Δ² atom table", table_ok, || format!("got\n{t}"));
        r.merge("laws oriental 3", composition_laws(&oriental(3)?, 60)?);
        r.merge("laws cube 3", composition_laws(&cube(3)?, 60)?);
        let lf = fixtures::loop_fixture();
        match loop_analysis(&lf).format_cycle() {
            Some(cycle) => r.pass(&format!("loop fixture rejected with cycle {cycle}")),
            None => r.fail("loop fixture rejected", "no cycle found"),
        }
        r.check("loop fixture fails STRONGLY_LOOP_FREE", !is_steiner(&lf).passed, || "accepted".into());
        Ok(())
    })
}

fn expect_failure(r: &mut CheckReport, label: &str, report: CheckReport, check: &str) {
    match report.find(check) {
        Some(c) if c.witness.is_some() => {
            r.pass(&format!("{label} fails {check} with witness {}", c.witness.as_deref().unwrap_or_default()))
        }
        _ => r.fail(&format!("{label} fails {check}"), format!("report was: {}", report.summary())),
    }
}

pub fn robustness(config: &SuiteConfig) -> CriterionOutcome {
    run(8, |r| {
        expect_failure(r, "d² fixture", validate_complex(&fixtures::d_squared_fixture()), "D2_ZERO");
        expect_failure(r, "ε∘d fixture", validate_complex(&fixtures::augmentation_fixture()), "AUG_KILLS_D1");
        expect_failure(r, "non-unital fixture", is_steiner(&fixtures::non_unital_fixture()), "UNITAL");
        let small = SuiteConfig { disk_max: 3, cube_max: 3, oriental_max: 3, ..config.clone() };
        for (label, c) in library(&small)? {
            let text = emit_complex(&c);
            let back = parse_complex(&text)?;
            r.check(&format!("round trip {label}"), *back == *c && emit_complex(&back) == text, || {
                "emit∘parse∘emit differs".into()
            });
        }
        for (label, f) in [("q2", q2()?), ("xi 3", xi(3)?), ("section_xi 3", section_xi(3)?.embed)] {
            let text = emit_map(&f);
            let back = parse_map(&text)?;
            r.check(&format!("round trip map {label}"), back == f && emit_map(&back) == text, || {
                "emit∘parse∘emit differs".into()
            });
        }
        Ok(())
    })
}

pub fn run_criterion(number: u8, config: &SuiteConfig) -> CriterionOutcome {
    match number {
        1 => validity(config),
        2 => counting(config),
        3 => construction(config),
        4 => dualities(config),
        5 => retractions(config),
        6 => decompositions(config),
        7 => atoms(config),
        8 => robustness(config),
        _ => panic!("criteria are numbered 1 to 8"),
    }
}

/// Every criterion; independent criteria run on separate threads and the
/// outcomes come back in criterion order.
pub fn run_suite(config: &SuiteConfig) -> Vec<CriterionOutcome> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=8u8).map(|k| s.spawn(move || run_criterion(k, config))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

/// Summary table, with per-criterion wall time when `timings` is set, and
/// the failing checks of every failed criterion.
pub fn render(outcomes: &[CriterionOutcome], timings: bool) -> String {
    let mut s = String::new();
    for o in outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let _ = write!(s, "{status}  {}  {:<26} {:>5} checks", o.number, o.title, o.report.checks.len());
        if timings {
            let _ = write!(s, "  {:>8.2}s", o.elapsed.as_secs_f64());
        }
        s.push('\n');
        for c in o.report.checks.iter().filter(|c| c.witness.is_some()) {
            let _ = writeln!(s, "      FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or_default());
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", outcomes.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_formula_is_the_reversed_join() {
        let a = oriental(1).unwrap();
        let c = join_with_point_formula(&a, 1).unwrap();
        assert!(validate_complex(&c).passed);
        let j = c.generator(&join_name(&subset("0"), &point_name())).unwrap();
        let expected = [(left_name(&subset("0")), BigInt::one()), (right_name(&point_name()), -BigInt::one())];
        let mut got = c.named_terms(&c.d(&j).unwrap());
        got.sort();
        let mut want = expected.to_vec();
        want.sort();
        assert_eq!(got, want);
        let o = construction(&SuiteConfig::default());
        assert!(o.passed(), "{}", render(&[o], false));
    }

    #[test]
    fn small_battery_passes() {
        let small = SuiteConfig { disk_max: 3, cube_max: 3, oriental_max: 3, random_thetas: 5, random_complexes: 5, seed: 1 };
        for k in [1, 2, 7, 8] {
            let o = run_criterion(k, &small);
            assert!(o.passed(), "{}", render(&[o], false));
        }
    }
}
