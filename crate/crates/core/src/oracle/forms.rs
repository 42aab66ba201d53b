use crate::error::{Error, Result};
use num_integer::Integer;

/// Largest |Δ| accepted by the exhaustive routines.
pub const DISC_BOUND: i64 = 100_000_000;

/// Positive definite binary quadratic form ax² + bxy + cy².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = QuadForm { a, b, c };
        if a <= 0 || f.discriminant() >= 0 {
            return Err(Error::Domain(format!("({a},{b},{c}) is not positive definite")));
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn reduce(self) -> Self {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if b > a || b <= -a {
                // normalize b into (-a, a]
                let k = Integer::div_floor(&(a - b), &(2 * a));
                let nb = b + 2 * k * a;
                c += k * (b + k * a);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        QuadForm { a: a as i64, b: b as i64, c: c as i64 }
    }

    /// The principal form of discriminant Δ, reduced.
    pub fn identity(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        QuadForm { a: 1, b, c: (b * b - disc) / 4 }
    }

    pub fn inverse(self) -> Self {
        QuadForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        r.a == 1
    }

    /// Gauss composition followed by reduction.
    pub fn compose(self, other: Self) -> Self {
        debug_assert_eq!(self.discriminant(), other.discriminant());
        let (f1, f2) = if self.a > other.a { (other, self) } else { (self, other) };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (d, y1) = if a2 % a1 == 0 {
            (a1, 0)
        } else {
            let e = a2.extended_gcd(&a1);
            (e.gcd, e.x)
        };
        let (d1, x2, y2) = if s % d == 0 {
            (d, 0, -1)
        } else {
            let e = s.extended_gcd(&d);
            (e.gcd, e.x, -e.y)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).mod_floor(&v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
        QuadForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
    }

    pub fn pow(self, mut n: u64) -> Self {
        let mut acc = QuadForm::identity(self.discriminant());
        let mut base = self.reduce();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(base);
            }
            base = base.compose(base);
            n >>= 1;
        }
        acc
    }
}

fn check_disc(disc: i64) -> Result<()> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::Domain(format!("{disc} is not a negative discriminant")));
    }
    if -disc > DISC_BOUND {
        return Err(Error::TooLarge(format!("|{disc}| exceeds {DISC_BOUND}")));
    }
    Ok(())
}

/// All reduced forms of discriminant Δ (primitive and not).
fn all_reduced_forms(disc: i64) -> Result<Vec<QuadForm>> {
    check_disc(disc)?;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QuadForm { a, b, c };
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    Ok(out)
}

/// Reduced primitive forms of discriminant Δ: the class group as a set.
pub fn reduced_forms(disc: i64) -> Result<Vec<QuadForm>> {
    Ok(all_reduced_forms(disc)?
        .into_iter()
        .filter(|f| f.a.gcd(&f.b).gcd(&f.c) == 1)
        .collect())
}

pub fn class_number(disc: i64) -> Result<u64> {
    Ok(reduced_forms(disc)?.len() as u64)
}

/// A form (ℓ, b, c) of discriminant Δ with 0 ≤ b ≤ ℓ, or None when ℓ is
/// inert.
pub fn prime_form(l: i64, disc: i64) -> Option<QuadForm> {
    if disc.rem_euclid(l) == 0 && l != 2 {
        return None;
    }
    (0..=l)
        .filter(|b| (b - disc).rem_euclid(2) == 0)
        .find(|b| (b * b - disc).rem_euclid(4 * l) == 0)
        .map(|b| QuadForm { a: l, b, c: (b * b - disc) / (4 * l) })
}

pub fn form_order(f: QuadForm) -> u64 {
    let mut g = f.reduce();
    let mut k = 1;
    while !g.is_identity() {
        g = g.compose(f);
        k += 1;
    }
    k
}

/// Order of the class of a prime form above ℓ; needs ℓ split in the order.
pub fn form_class_order(l: u64, disc: i64) -> Result<u64> {
    check_disc(disc)?;
    let l = l as i64;
    if disc.rem_euclid(l) == 0 {
        return Err(Error::Domain(format!("{l} divides {disc}")));
    }
    let f = prime_form(l, disc).ok_or_else(|| Error::Domain(format!("{l} is inert for {disc}")))?;
    Ok(form_order(f))
}
