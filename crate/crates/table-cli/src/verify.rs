//! Item-by-item comparison of a built table with a golden fixture.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use ga_core::{Blade, Cx, Dyadic, Quat, Scalar, Signature};
use ideal_engine::RingKind;
use idempotent_factory::{Mode, Mv};
use rayon::prelude::*;
use rep_spinor::{Involution, NormFormula};

use crate::expr::{eval_matrix, eval_matrix_form, eval_mv, eval_spinor, ExprError, MvDomain};
use crate::fixture::{load_dir, GoldenFixture};
use crate::table::{build_table, build_table_with_phases, SpinorTable};
use crate::TableError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemResult {
    pub item: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub items: Vec<ItemResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ItemResult> {
        self.items.iter().filter(|r| !r.pass)
    }

    pub fn item(&self, name: &str) -> Option<&ItemResult> {
        self.items.iter().find(|r| r.item == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.passed() { "PASS" } else { "FAIL" })?;
        for r in &self.items {
            let mark = if r.pass { "ok  " } else { "FAIL" };
            if r.detail.is_empty() {
                writeln!(f, "  {mark} {}", r.item)?;
            } else {
                writeln!(f, "  {mark} {}: {}", r.item, r.detail)?;
            }
        }
        Ok(())
    }
}

type Outcome = Result<String, String>;

fn expr_err(e: ExprError) -> String {
    format!("unparsable fixture: {e}")
}

fn mat_text(m: &BTreeMap<(usize, usize), Quat>) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter().map(|((r, c), q)| format!("({q})E{}{}", r + 1, c + 1)).collect::<Vec<_>>().join(" + ")
}

/// The 24 automorphisms of H, as signed permutations of (q1, q2, q3).
fn quaternion_automorphisms() -> Vec<([usize; 3], [i8; 3])> {
    let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let mut out = Vec::new();
    for (pi, p) in perms.iter().enumerate() {
        let parity: i8 = if pi < 3 { 1 } else { -1 };
        for bits in 0..8u8 {
            let s = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { -1i8 } else { 1 });
            if parity * s[0] * s[1] * s[2] == 1 {
                out.push((*p, s));
            }
        }
    }
    out
}

fn apply_automorphism(a: &([usize; 3], [i8; 3]), q: Quat) -> Quat {
    let c = q.components();
    let mut out = [c[0], Dyadic::ZERO, Dyadic::ZERO, Dyadic::ZERO];
    for i in 0..3 {
        let v = c[i + 1];
        out[a.0[i] + 1] = if a.1[i] < 0 { -v } else { v };
    }
    Quat::from_components(out)
}

fn map_quat(m: &BTreeMap<(usize, usize), Quat>, f: impl Fn(Quat) -> Quat) -> BTreeMap<(usize, usize), Quat> {
    m.iter().map(|(k, q)| (*k, f(*q))).collect()
}

fn units() -> [Cx; 4] {
    [Cx::one(), -Cx::one(), Cx::I, -Cx::I]
}

/// c with `target = c · ours`, c a unit in {±1, ±i} (only ±1 when `real_only`).
fn unit_ratio(target: &Mv, ours: &Mv, real_only: bool) -> Option<Cx> {
    let n = if real_only { 2 } else { 4 };
    units()[..n].iter().copied().find(|c| &ours.scale(*c) == target)
}

/// Parsed left-hand side of a norm identity.
pub fn parse_norm_lhs(src: &str) -> Result<NormFormula, String> {
    let bad = || format!("cannot read norm expression {src:?}");
    let mut s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut sign = 1;
    if let Some(rest) = s.strip_prefix('-') {
        sign = -1;
        s = rest.to_string();
    }
    if let Some(inner) = s.strip_prefix('<') {
        s = inner.strip_suffix('>').ok_or_else(bad)?.to_string();
    }
    let s = s.strip_suffix("Psi").ok_or_else(bad)?;
    let (sandwich, s) = if let Some(tail) = s.strip_prefix('e') {
        let end = if tail.starts_with('{') {
            s.find('}').ok_or_else(bad)? + 1
        } else {
            1 + tail.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?
        };
        let (u, rest) = s.split_at(end);
        let blade: Blade = u.parse().map_err(|_| bad())?;
        let rest = rest.strip_suffix(u).ok_or_else(bad)?;
        (Some(blade), rest)
    } else {
        (None, s)
    };
    let (core, conjugated) = match ["^{*}", "^*", "*"].iter().find_map(|m| s.strip_suffix(m)) {
        Some(c) => (c, true),
        None => (s, false),
    };
    let involution = if core == "Psi" {
        Involution::Identity
    } else {
        let name = core.strip_suffix("(Psi)").ok_or_else(bad)?;
        Involution::from_name(name).ok_or_else(bad)?
    };
    Ok(NormFormula { sign, involution, conjugated, sandwich })
}

/// Parsed right-hand side `c(s1^2+...+sN^2)`: (c, N, uses |s_j|).
pub fn parse_norm_rhs(src: &str) -> Result<(Dyadic, usize, bool), String> {
    let bad = || format!("cannot read norm value {src:?}");
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let (c, inner) = match s.find('(') {
        Some(i) if s.ends_with(')') => {
            let (num, den) = s[..i].split_once('/').ok_or_else(bad)?;
            let num: i128 = num.parse().map_err(|_| bad())?;
            let den: i128 = den.parse().map_err(|_| bad())?;
            if den <= 0 || den & (den - 1) != 0 {
                return Err(bad());
            }
            (Dyadic::new(num, den.trailing_zeros()), &s[i + 1..s.len() - 1])
        }
        _ => (Dyadic::ONE, s.as_str()),
    };
    let mut absolute = None;
    let mut expect = 1;
    let mut gap = false;
    for t in inner.split('+') {
        if t == "..." {
            gap = true;
            continue;
        }
        let t = t.strip_suffix("^2").ok_or_else(bad)?;
        let (abs, t) = match t.strip_prefix('|').and_then(|x| x.strip_suffix('|')) {
            Some(x) => (true, x),
            None => (false, t),
        };
        if *absolute.get_or_insert(abs) != abs {
            return Err(bad());
        }
        let j: usize = t.strip_prefix('s').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if j < expect || (j > expect && !gap) {
            return Err(bad());
        }
        gap = false;
        expect = j + 1;
    }
    Ok((c, expect - 1, absolute.ok_or_else(bad)?))
}

struct Ctx<'a> {
    table: &'a SpinorTable,
    fx: &'a GoldenFixture,
    sig: Signature,
    dom: MvDomain,
    /// Relabelling s_j -> σ_j s_j chosen in item 5 and reused in item 6.
    sigma: Option<Vec<Cx>>,
}

impl Ctx<'_> {
    fn classification(&self) -> Outcome {
        if self.table.classification == self.fx.classification {
            Ok(self.fx.classification.clone())
        } else {
            Err(format!("expected {}, built {}", self.fx.classification, self.table.classification))
        }
    }

    fn item1(&self) -> Outcome {
        let want = eval_mv(&self.fx.item1.idempotent, &self.dom).map_err(expr_err)?;
        if want != self.dom.idempotent {
            return Err(format!("expected {want}, built {}", self.dom.idempotent));
        }
        if let Some(n) = self.fx.item1.family_size {
            if n != 1 << self.table.k {
                return Err(format!("family of {n} expected, built 2^{}", self.table.k));
            }
        }
        Ok(want.to_string())
    }

    fn item2(&self) -> Outcome {
        let ours: Vec<Mv> = self
            .table
            .items
            .ring
            .elements
            .iter()
            .map(|e| crate::table::mv_of(self.sig, &e.value))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let fx = &self.fx.item2.elements;
        if fx.len() != ours.len() {
            return Err(format!("{} ring elements expected, built {}", fx.len(), ours.len()));
        }
        for (i, (src, o)) in fx.iter().zip(&ours).enumerate() {
            let want = eval_mv(src, &self.dom).map_err(expr_err)?;
            if &want != o {
                return Err(format!("element {}: expected {want}, built {o}", i + 1));
            }
        }
        if let Some(v) = &self.fx.item2.value {
            let want = eval_mv(v, &self.dom).map_err(expr_err)?;
            if want != ours[0] {
                return Err(format!("value: expected {want}, built {}", ours[0]));
            }
        }
        Ok(format!("{} elements", ours.len()))
    }

    fn item3(&self) -> Outcome {
        let gens = &self.table.items.basis.generators;
        let fx = &self.fx.item3.generators;
        if fx.len() != gens.len() {
            return Err(format!("{} generators expected, built {}", fx.len(), gens.len()));
        }
        for (i, (src, g)) in fx.iter().zip(gens).enumerate() {
            let want = eval_mv(src, &self.dom).map_err(expr_err)?;
            let ours = crate::table::mv_of(self.sig, &g.value).map_err(|e| e.to_string())?;
            if want != ours {
                return Err(format!("generator {}: expected {want}, built {ours}", i + 1));
            }
        }
        match (&self.fx.item3.second_block, &self.table.items.basis.second_block) {
            // Complex odd tables do not print the second block.
            (None, _) => {}
            (Some(fx2), Some(ours2)) if fx2.len() == ours2.len() => {
                for (src, t) in fx2.iter().zip(ours2) {
                    let want = eval_mv(src, &self.dom).map_err(expr_err)?;
                    let ours = crate::table::mv_of(self.sig, t).map_err(|e| e.to_string())?;
                    if want != ours {
                        return Err(format!("second block: expected {want}, built {ours}"));
                    }
                }
            }
            _ => return Err("second block differs in presence or length".into()),
        }
        Ok(format!("{} generators", gens.len()))
    }

    /// Item 4, returning the automorphism of H it needed.
    fn item4(&self) -> Result<(String, usize), String> {
        let ours = self.table.generator_maps();
        let fx: Vec<_> =
            self.fx.item4.matrices.iter().map(|s| eval_matrix(s)).collect::<Result<_, _>>().map_err(expr_err)?;
        if fx.len() != ours.len() {
            return Err(format!("{} matrices expected, built {}", fx.len(), ours.len()));
        }
        let autos = quaternion_automorphisms();
        let allowed = if self.fx.equivalence.quaternion_relabel && self.table.items.ring.kind == RingKind::H.to_string()
        {
            autos.len()
        } else {
            1
        };
        let mut first_bad = String::new();
        for (ai, a) in autos.iter().take(allowed).enumerate() {
            let mut ok = true;
            for (j, (w, o)) in fx.iter().zip(&ours).enumerate() {
                let o = map_quat(o, |q| apply_automorphism(a, q));
                if *w != o {
                    if ai == 0 {
                        first_bad = format!("e{}: expected {}, built {}", j + 1, mat_text(w), mat_text(&o));
                    }
                    ok = false;
                    break;
                }
            }
            if ok {
                let note = if ai == 0 { String::new() } else { format!(" after relabelling H by {a:?}") };
                return Ok((format!("{} matrices{note}", ours.len()), ai));
            }
        }
        Err(first_bad)
    }

    fn item5(&mut self) -> Outcome {
        let ours = self.table.frame_values().map_err(|e| e.to_string())?;
        let fx = eval_spinor(&self.fx.item5.spinor, &self.dom).map_err(expr_err)?;
        if fx.keys().next_back().map_or(0, |j| j + 1) != ours.len() || fx.len() != ours.len() {
            return Err(format!("{} coefficients expected, built {}", fx.len(), ours.len()));
        }
        let relabel = self.fx.equivalence.coefficient_sign;
        let real_only = !self.table.items.spinor.complex_coefficients;
        let mut sigma = Vec::new();
        for (j, o) in ours.iter().enumerate() {
            let w = &fx[&j];
            let c = if relabel { unit_ratio(w, o, real_only) } else { (w == o).then_some(Cx::one()) };
            match c {
                Some(c) => sigma.push(c),
                None => return Err(format!("s{} direction: expected {w}, built {o}", j + 1)),
            }
        }
        let moved = sigma.iter().filter(|c| **c != Cx::one()).count();
        self.sigma = Some(sigma);
        Ok(if moved == 0 {
            format!("{} coefficients", ours.len())
        } else {
            format!("{} coefficients, {moved} relabelled", ours.len())
        })
    }

    fn item6(&self, auto: usize) -> Outcome {
        let ours = self.table.spinor_matrix_maps();
        let fx = eval_matrix_form(&self.fx.item6.matrix).map_err(expr_err)?;
        let n = ours.len();
        let sigma = self.sigma.clone().unwrap_or_else(|| vec![Cx::one(); n]);
        let a = quaternion_automorphisms()[auto];
        for (j, o) in ours.iter().enumerate() {
            let w = fx.get(&j).cloned().unwrap_or_default();
            let s = Quat::from_cx(sigma[j]);
            let o = map_quat(o, |q| apply_automorphism(&a, s * q));
            if w != o {
                return Err(format!("s{} column: expected {}, built {}", j + 1, mat_text(&w), mat_text(&o)));
            }
        }
        if let Some(extra) = fx.keys().find(|j| **j >= n) {
            return Err(format!("fixture mentions s{} beyond the {n} built coefficients", extra + 1));
        }
        Ok(format!("{n} columns"))
    }

    fn item7(&self) -> Outcome {
        let formula = parse_norm_lhs(&self.fx.item7.lhs)?;
        let (c, count, absolute) = parse_norm_rhs(&self.fx.item7.rhs)?;
        let frame = self.table.frame().map_err(|e| e.to_string())?;
        let complex = frame.complex_coefficients;
        // |s_j|² = s_j² for real coefficients, so only the converse is an error.
        if complex && !absolute {
            return Err("complex coefficients need |s_j|^2".into());
        }
        let mut tries = vec![formula];
        if self.fx.equivalence.implicit_conjugation && !formula.conjugated {
            tries.push(NormFormula { conjugated: true, ..formula });
        }
        let built =
            match self.table.items.norm.rhs_normalization.strip_prefix("2^-").and_then(|e| e.parse::<i32>().ok()) {
                Some(e) => Dyadic::pow2(-e),
                None => return Err(format!("bad normalization {:?}", self.table.items.norm.rhs_normalization)),
            };
        let mut last = String::new();
        for f in tries {
            let q = f.evaluate(&frame);
            match q.as_scaled_identity() {
                Some(v) if v == c && q.symbol_count() == count && v == built => {
                    let note = if f == formula { "" } else { " with conjugation" };
                    return Ok(format!("{f} = {q}{note}"));
                }
                _ => last = format!("{f} evaluates to {q}, expected {}", self.fx.item7.rhs),
            }
        }
        Err(last)
    }
}

pub fn verify_against_golden(table: &SpinorTable, fx: &GoldenFixture) -> Result<Report, TableError> {
    if table.signature != fx.signature || table.mode != fx.mode {
        return Err(TableError::Fixture {
            path: fx.name(),
            message: format!("table is Cl({},{})", table.signature[0], table.signature[1]),
        });
    }
    let sig = table.sig()?;
    let dom = MvDomain { sig, idempotent: table.idempotent_mv()? };
    let mut ctx = Ctx { table, fx, sig, dom, sigma: None };
    let mut items = Vec::new();
    let mut push = |item: &str, r: Outcome| {
        let (pass, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        items.push(ItemResult { item: item.to_string(), pass, detail });
    };
    push("classification", ctx.classification());
    push("item 1", ctx.item1());
    push("item 2", ctx.item2());
    push("item 3", ctx.item3());
    let (r4, auto) = match ctx.item4() {
        Ok((d, a)) => (Ok(d), a),
        Err(d) => (Err(d), 0),
    };
    push("item 4", r4);
    push("item 5", ctx.item5());
    push("item 6", ctx.item6(auto));
    push("item 7", ctx.item7());
    Ok(Report { name: fx.name(), items })
}

/// Phases c_r with fixture generator r = c_r · built generator r.
fn generator_phases(table: &SpinorTable, fx: &GoldenFixture) -> Result<Option<Vec<Cx>>, TableError> {
    let sig = table.sig()?;
    let dom = MvDomain { sig, idempotent: table.idempotent_mv()? };
    let mut phases = Vec::new();
    for (src, g) in fx.item3.generators.iter().zip(&table.items.basis.generators) {
        let want = eval_mv(src, &dom)?;
        let ours = crate::table::mv_of(sig, &g.value)?;
        // Built generators already carry unit phase 1.
        phases.push(unit_ratio(&want, &ours, false).unwrap_or(Cx::one()));
    }
    Ok((phases.len() == table.items.basis.generators.len() && phases.iter().any(|c| *c != Cx::one())).then_some(phases))
}

/// Phases d_r for the unprinted second block of a complex odd table, chosen
/// so that the block-2 parts of item 4 agree with the fixture (d_1 = 1).
fn second_block_phases(table: &SpinorTable, fx: &GoldenFixture) -> Result<Option<Vec<Cx>>, TableError> {
    let Some(second) = &table.items.basis.second_block else {
        return Ok(None);
    };
    if fx.item3.second_block.is_some() || table.mode != crate::TableMode::Complex {
        return Ok(None);
    }
    let m = second.len();
    let want: Vec<_> = fx.item4.matrices.iter().map(|s| eval_matrix(s)).collect::<Result<_, _>>()?;
    let ours = table.generator_maps();
    let block2 = |map: &BTreeMap<(usize, usize), Quat>| -> BTreeMap<(usize, usize), Quat> {
        map.iter().filter(|((r, c), _)| *r >= m && *c >= m).map(|(k, v)| (*k, *v)).collect()
    };
    let targets: Vec<_> = want.iter().map(block2).collect();
    let current: Vec<_> = ours.iter().map(block2).collect();
    if targets == current {
        return Ok(None);
    }
    for code in 0..4usize.pow(m as u32 - 1) {
        let mut d = vec![Cx::one()];
        let mut x = code;
        for _ in 1..m {
            d.push(units()[x % 4]);
            x /= 4;
        }
        let q: Vec<Quat> = d.iter().map(|c| Quat::from_cx(*c)).collect();
        let qinv: Vec<Quat> = d.iter().map(|c| Quat::from_cx(c.inverse().expect("unit"))).collect();
        let ok = current.iter().zip(&targets).all(|(o, w)| {
            let moved: BTreeMap<_, _> = o.iter().map(|((r, c), v)| ((*r, *c), qinv[r - m] * *v * q[c - m])).collect();
            &moved == w
        });
        if ok {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Builds the table the fixture describes and compares the two.
pub fn check_fixture(fx: &GoldenFixture) -> Result<Report, TableError> {
    let sig = Signature::new(fx.signature[0], fx.signature[1])?;
    let mode: Mode = fx.mode.into();
    let mut table = build_table(sig, mode)?;
    if fx.equivalence.generator_phase {
        if let Some(ph) = generator_phases(&table, fx)? {
            table = build_table_with_phases(sig, mode, Some(&ph))?;
        }
        if let Some(d) = second_block_phases(&table, fx)? {
            table.rephase_second_block(&d)?;
        }
    }
    verify_against_golden(&table, fx)
}

pub type FixtureOutcome = (PathBuf, Result<Report, TableError>);

/// Checks every fixture below `dir` in parallel.
pub fn verify_all(dir: &Path) -> Result<Vec<FixtureOutcome>, TableError> {
    let fixtures = load_dir(dir)?;
    Ok(fixtures.into_par_iter().map(|(p, f)| (p, check_fixture(&f))).collect())
}
