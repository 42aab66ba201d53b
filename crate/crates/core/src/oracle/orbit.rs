use super::forms::{class_number, form_class_order};
use crate::ec::{count_points_small, curve_from_j, curve_with_trace, Curve};
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};
use crate::isogeny::{elkies_walk, velu_step, IdealStep, Method};
use crate::protocol::SystemParams;
use num_traits::ToPrimitive;
use rand::Rng;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

/// Largest orbit the enumeration will build.
pub const ORBIT_MAX: usize = 10_000;
/// Largest field for enumeration.
pub const ORBIT_FIELD_BITS: u64 = 20;

/// The orbit of j(E0) with the λ-successor map of every listed prime.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Vertices in discovery order; index 0 is j(E0).
    pub vertices: Vec<Fp>,
    /// For each ℓ, successor indices in direction λ.
    pub succ: BTreeMap<u64, Vec<usize>>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Cycle lengths of the ℓ-successor permutation, sorted.
    pub fn cycle_lengths(&self, l: u64) -> Vec<usize> {
        let succ = &self.succ[&l];
        let mut seen = vec![false; succ.len()];
        let mut out = Vec::new();
        for start in 0..succ.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = succ[v];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, j: &Fp) -> bool {
        self.vertices.contains(j)
    }

    /// Graphviz rendering with one edge colour per prime.
    pub fn to_dot(&self) -> String {
        const COLOURS: [&str; 8] = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan"];
        let mut s = String::from("digraph orbit {\n");
        for (i, j) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{j}\"];");
        }
        for (k, (l, succ)) in self.succ.iter().enumerate() {
            for (i, n) in succ.iter().enumerate() {
                let _ = writeln!(s, "  v{i} -> v{n} [label=\"{l}\", color={}];", COLOURS[k % COLOURS.len()]);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// One step in direction λ of `s` by whichever method the step is listed with.
pub fn step_once<R: Rng + ?Sized>(
    params: &SystemParams,
    s: &IdealStep,
    e: &Curve<PrimeField>,
    rng: &mut R,
) -> Result<Curve<PrimeField>> {
    match s.method {
        Method::EE => elkies_walk(e, s, 1, &*params.modpoly(s.l)?, rng),
        _ => velu_step(e, s, rng),
    }
}

/// Closure of {j(E0)} under the λ direction of every listed prime (in a
/// finite group this is also closed under μ).
pub fn enumerate_orbit<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Result<Orbit> {
    if params.p().bits() > ORBIT_FIELD_BITS {
        return Err(Error::TooLarge(format!("orbit enumeration needs p < 2^{ORBIT_FIELD_BITS}")));
    }
    let steps: Vec<&IdealStep> = params.partition.steps().collect();
    let mut index: HashMap<Fp, usize> = HashMap::new();
    let mut vertices = vec![params.j0()];
    index.insert(params.j0(), 0);
    let mut curves = vec![params.e0.clone()];
    let mut raw: Vec<Vec<Fp>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let e = curves[v].clone();
        let mut out = Vec::with_capacity(steps.len());
        for s in &steps {
            let img = step_once(params, s, &e, rng)?;
            let j = img.j_invariant();
            if !index.contains_key(&j) {
                if vertices.len() >= ORBIT_MAX {
                    return Err(Error::TooLarge(format!("orbit exceeds {ORBIT_MAX} vertices")));
                }
                index.insert(j.clone(), vertices.len());
                vertices.push(j.clone());
                curves.push(curve_with_trace(&params.field, &j, &params.t, rng)?);
                queue.push_back(vertices.len() - 1);
            }
            out.push(j);
        }
        if raw.len() <= v {
            raw.resize(v + 1, Vec::new());
        }
        raw[v] = out;
    }
    let mut succ = BTreeMap::new();
    for (k, s) in steps.iter().enumerate() {
        succ.insert(s.l, raw.iter().map(|o| index[&o[k]]).collect());
    }
    Ok(Orbit { vertices, succ })
}

/// Result of certifying a toy parameter set against the oracle.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub orbit_size: usize,
    pub delta_k: i64,
    pub class_number: u64,
    /// (ℓ, cycle lengths, class order).
    pub cycles: Vec<(u64, Vec<usize>, u64)>,
    pub traces_ok: bool,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let ok = |b: bool| if b { "PASS" } else { "FAIL" };
        let size_ok = self.orbit_size as u64 == self.class_number;
        let _ = writeln!(
            s,
            "orbit = {} {} h({}) = {}: {}",
            self.orbit_size,
            if size_ok { "=" } else { "!=" },
            self.delta_k,
            self.class_number,
            ok(size_ok)
        );
        for (l, lens, ord) in &self.cycles {
            let good = lens.iter().all(|&c| c as u64 == *ord);
            let _ = writeln!(s, "l = {l}: cycles {:?}, class order {ord}: {}", lens, ok(good));
        }
        let _ = writeln!(s, "traces: {}", ok(self.traces_ok));
        let _ = writeln!(s, "overall: {}", ok(self.pass));
        s
    }
}

/// Compares the orbit with h(ΔK), each ℓ-cycle length with the order of
/// the class above ℓ, and checks every vertex has a twist with p + 1 − t
/// points.
pub fn verify<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Result<VerifyReport> {
    let orbit = enumerate_orbit(params, rng)?;
    let dk = params.delta_k.to_i64().ok_or_else(|| Error::TooLarge("delta_k".into()))?;
    let h = class_number(dk)?;
    let mut cycles = Vec::new();
    let mut pass = orbit.len() as u64 == h;
    for s in params.partition.steps() {
        let ord = form_class_order(s.l, dk)?;
        let lens = orbit.cycle_lengths(s.l);
        pass &= lens.iter().all(|&c| c as u64 == ord);
        cycles.push((s.l, lens, ord));
    }
    let n = params.group_order();
    let mut traces_ok = true;
    for j in &orbit.vertices {
        let (a, b) = curve_from_j(&params.field, j, rng)?;
        traces_ok &= count_points_small(&a)? == n || count_points_small(&b)? == n;
    }
    pass &= traces_ok;
    Ok(VerifyReport { orbit_size: orbit.len(), delta_k: dk, class_number: h, cycles, traces_ok, pass })
}
