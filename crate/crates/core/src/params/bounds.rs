use super::classify::Partition;
use crate::error::{Error, Result};
use crate::isogeny::{IdealStep, Method};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeMap;

/// Walk bounds M_ℓ.
pub type Bounds = BTreeMap<u64, u64>;

/// Seconds per isogeny step: linear in ℓ for Elkies steps, tabulated by
/// extension degree for Vélu steps.
#[derive(Clone, Debug, PartialEq)]
pub struct CostModel {
    pub elkies_per_ell: f64,
    /// (r, seconds) sorted by r.
    pub velu: Vec<(u32, f64)>,
}

impl CostModel {
    /// 0.017·ℓ s per Elkies step and the Vélu timings per degree r as
    /// published for the 512-bit set; missing degrees are interpolated.
    pub fn published() -> Self {
        CostModel {
            elkies_per_ell: 0.017,
            velu: vec![(1, 0.02), (3, 0.10), (4, 0.15), (5, 0.24), (7, 0.8), (8, 1.15), (9, 1.3)],
        }
    }

    pub fn velu_cost(&self, r: u32) -> f64 {
        let v = &self.velu;
        if let Some(&(_, c)) = v.iter().find(|(d, _)| *d == r) {
            return c;
        }
        let lo = v.iter().rev().find(|(d, _)| *d < r);
        let hi = v.iter().find(|(d, _)| *d > r);
        match (lo, hi) {
            (Some(&(r0, c0)), Some(&(r1, c1))) => c0 + (c1 - c0) * f64::from(r - r0) / f64::from(r1 - r0),
            (Some(&(r0, c0)), None) => c0 * f64::from(r) / f64::from(r0),
            (None, Some(&(r1, c1))) => c1 * f64::from(r) / f64::from(r1),
            (None, None) => f64::from(r),
        }
    }

    pub fn elkies_cost(&self, l: u64) -> f64 {
        self.elkies_per_ell * l as f64
    }

    pub fn step_cost(&self, s: &IdealStep) -> f64 {
        match s.method {
            Method::EE => self.elkies_cost(s.l),
            _ => {
                let r = [s.forward, s.backward].iter().flatten().map(|x| x.r).max().unwrap_or(1);
                self.velu_cost(r)
            }
        }
    }

    /// Lines `elkies_per_ell = c` and `velu = r:s;r:s;...`.
    pub fn to_text(&self) -> String {
        let v: Vec<String> = self.velu.iter().map(|(r, c)| format!("{r}:{c}")).collect();
        format!("elkies_per_ell = {}\nvelu = {}\n", self.elkies_per_ell, v.join(";"))
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut elkies = None;
        let mut velu = None;
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::ParseLine { line: i + 1, msg: m.to_string() };
            let (k, v) = line.split_once('=').ok_or_else(|| err("expected 'key = value'"))?;
            match k.trim() {
                "elkies_per_ell" if elkies.is_none() => {
                    elkies = Some(v.trim().parse::<f64>().map_err(|_| err("bad number"))?);
                }
                "velu" if velu.is_none() => {
                    let mut out = Vec::new();
                    for item in v.split(';').map(str::trim).filter(|x| !x.is_empty()) {
                        let (r, c) = item.split_once(':').ok_or_else(|| err("expected 'r:seconds'"))?;
                        let r: u32 = r.trim().parse().map_err(|_| err("bad degree"))?;
                        let c: f64 = c.trim().parse().map_err(|_| err("bad number"))?;
                        out.push((r, c));
                    }
                    velu = Some(out);
                }
                "elkies_per_ell" | "velu" => return Err(err("duplicate key")),
                other => return Err(err(&format!("unknown key '{other}'"))),
            }
        }
        let cost = CostModel {
            elkies_per_ell: elkies.ok_or_else(|| Error::Parse("elkies_per_ell: missing".into()))?,
            velu: velu.ok_or_else(|| Error::Parse("velu: missing".into()))?,
        };
        if !cost.is_valid() {
            return Err(Error::Parse("cost model must be positive and nondecreasing in r".into()));
        }
        Ok(cost)
    }

    /// Validity: nonnegative and monotone.
    pub fn is_valid(&self) -> bool {
        self.elkies_per_ell > 0.0
            && self.elkies_per_ell.is_finite()
            && !self.velu.is_empty()
            && self.velu.iter().all(|(_, c)| *c > 0.0 && c.is_finite())
            && self.velu.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1)
    }
}

/// Π_{VV ∪ EE} (2M+1) · Π_{VE} (M+1).
pub fn keyspace_size(bounds: &Bounds, part: &Partition) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for s in part.steps() {
        let m = *bounds.get(&s.l).ok_or_else(|| Error::Params(format!("no bound for {}", s.l)))?;
        acc *= match s.method {
            Method::VE => BigUint::from(m) + 1u32,
            _ => BigUint::from(m) * 2u32 + 1u32,
        };
    }
    Ok(acc)
}

fn bounds_at(cost: &CostModel, part: &Partition, t: f64) -> Bounds {
    part.steps().map(|s| (s.l, (t / cost.step_cost(s)).floor() as u64)).collect()
}

/// Bounds for the least time budget T (within 1%) whose keyspace reaches
/// `target`; M_ℓ is the largest count with M_ℓ·cost_ℓ ≤ T.
pub fn optimize_bounds_target(cost: &CostModel, part: &Partition, target: &BigUint) -> Result<Bounds> {
    if !cost.is_valid() {
        return Err(Error::Params("cost model must be positive and monotone".into()));
    }
    if part.is_empty() {
        return Err(Error::Params("empty partition".into()));
    }
    let feasible = |t: f64| keyspace_size(&bounds_at(cost, part, t), part).map(|k| k >= *target);
    let mut hi = part.steps().map(|s| cost.step_cost(s)).fold(f64::INFINITY, f64::min);
    let mut lo = 0.0;
    let mut doublings = 0;
    while !feasible(hi)? {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Params("no feasible time budget".into()));
        }
    }
    while hi > lo * 1.01 && hi - lo > 1e-12 {
        let mid = (lo + hi) / 2.0;
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // snap T down to the largest single-prime time actually used
    let b = bounds_at(cost, part, hi);
    let snapped = part.steps().map(|s| b[&s.l] as f64 * cost.step_cost(s)).fold(0.0, f64::max);
    let b2 = bounds_at(cost, part, snapped);
    if feasible(snapped)? {
        Ok(b2)
    } else {
        Ok(b)
    }
}

/// Bounds reaching a keyspace of 2^{2n}.
pub fn optimize_bounds(cost: &CostModel, part: &Partition, n: u32) -> Result<Bounds> {
    optimize_bounds_target(cost, part, &(BigUint::one() << (2 * n as usize)))
}

/// Total cost of a walk with every exponent at its bound.
pub fn max_walk_cost(cost: &CostModel, part: &Partition, bounds: &Bounds) -> f64 {
    part.steps().map(|s| bounds.get(&s.l).copied().unwrap_or(0) as f64 * cost.step_cost(s)).sum()
}
