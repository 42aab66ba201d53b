use super::ext::{ExtElem, ExtField};
use super::prime::{Fp, PrimeField};
use super::Field;
use crate::error::{Error, Result};
use num_bigint::BigUint;

/// Either a prime field or an extension over it.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Prime(PrimeField),
    Ext(ExtField),
}

impl AnyField {
    pub fn degree(&self) -> usize {
        match self {
            AnyField::Prime(_) => 1,
            AnyField::Ext(e) => e.degree(),
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            AnyField::Prime(f) => f.order().clone(),
            AnyField::Ext(e) => e.order().clone(),
        }
    }

    pub fn prime_field(&self) -> &PrimeField {
        match self {
            AnyField::Prime(f) => f,
            AnyField::Ext(e) => e.base(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Prime(Fp),
    Ext(ExtElem),
}

/// A field element that carries its parent, for callers that mix fields
/// dynamically. Operations check that both operands share a parent.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: AnyField,
    value: Value,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

macro_rules! binop {
    ($name:ident) => {
        pub fn $name(&self, other: &FieldElement) -> Result<FieldElement> {
            if self.field != other.field {
                return Err(Error::ParentMismatch);
            }
            let value = match (&self.field, &self.value, &other.value) {
                (AnyField::Prime(f), Value::Prime(a), Value::Prime(b)) => Value::Prime(f.$name(a, b)),
                (AnyField::Ext(f), Value::Ext(a), Value::Ext(b)) => Value::Ext(f.$name(a, b)),
                _ => return Err(Error::ParentMismatch),
            };
            Ok(FieldElement { field: self.field.clone(), value })
        }
    };
}

impl FieldElement {
    pub fn prime(field: &PrimeField, a: Fp) -> Self {
        FieldElement { field: AnyField::Prime(field.clone()), value: Value::Prime(a) }
    }

    pub fn ext(field: &ExtField, a: ExtElem) -> Self {
        FieldElement { field: AnyField::Ext(field.clone()), value: Value::Ext(a) }
    }

    pub fn from_i64(field: &AnyField, n: i64) -> Self {
        match field {
            AnyField::Prime(f) => Self::prime(f, f.from_i64(n)),
            AnyField::Ext(f) => Self::ext(f, f.from_i64(n)),
        }
    }

    pub fn parent(&self) -> &AnyField {
        &self.field
    }

    pub fn as_fp(&self) -> Option<&Fp> {
        match &self.value {
            Value::Prime(a) => Some(a),
            Value::Ext(_) => None,
        }
    }

    pub fn as_ext(&self) -> Option<&ExtElem> {
        match &self.value {
            Value::Ext(a) => Some(a),
            Value::Prime(_) => None,
        }
    }

    binop!(add);
    binop!(sub);
    binop!(mul);

    pub fn inv(&self) -> Result<FieldElement> {
        let value = match (&self.field, &self.value) {
            (AnyField::Prime(f), Value::Prime(a)) => Value::Prime(f.inv(a).ok_or(Error::DivisionByZero)?),
            (AnyField::Ext(f), Value::Ext(a)) => Value::Ext(f.inv(a).ok_or(Error::DivisionByZero)?),
            _ => return Err(Error::ParentMismatch),
        };
        Ok(FieldElement { field: self.field.clone(), value })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::ParentMismatch);
        }
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: &BigUint) -> FieldElement {
        let value = match (&self.field, &self.value) {
            (AnyField::Prime(f), Value::Prime(a)) => Value::Prime(f.pow(a, e)),
            (AnyField::Ext(f), Value::Ext(a)) => Value::Ext(f.pow(a, e)),
            _ => unreachable!(),
        };
        FieldElement { field: self.field.clone(), value }
    }

    pub fn sqrt(&self) -> Vec<FieldElement> {
        match (&self.field, &self.value) {
            (AnyField::Prime(f), Value::Prime(a)) => f.sqrts(a).into_iter().map(|s| Self::prime(f, s)).collect(),
            (AnyField::Ext(f), Value::Ext(a)) => f.sqrts(a).into_iter().map(|s| Self::ext(f, s)).collect(),
            _ => unreachable!(),
        }
    }

    /// Serialized form: hex for prime-field elements, comma-separated hex
    /// coefficients (constant first) for extension elements.
    pub fn to_text(&self) -> String {
        match (&self.field, &self.value) {
            (_, Value::Prime(a)) => a.to_hex(),
            (AnyField::Ext(f), Value::Ext(a)) => f.to_text(a),
            _ => unreachable!(),
        }
    }

    pub fn parse(field: &AnyField, s: &str) -> Result<FieldElement> {
        match field {
            AnyField::Prime(f) => Ok(Self::prime(f, f.from_hex(s)?)),
            AnyField::Ext(f) => Ok(Self::ext(f, f.from_text(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_extension;

    #[test]
    fn checked_operations() {
        let f7 = PrimeField::from_u64(7).unwrap();
        let f11 = PrimeField::from_u64(11).unwrap();
        let a = FieldElement::prime(&f7, f7.elem_u64(3));
        let b = FieldElement::prime(&f11, f11.elem_u64(3));
        assert_eq!(a.add(&b), Err(Error::ParentMismatch));
        let z = FieldElement::prime(&f7, f7.zero());
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
        assert_eq!(a.inv().unwrap().as_fp(), Some(&f7.elem_u64(5)));
        let two = FieldElement::prime(&f7, f7.elem_u64(2));
        let roots: Vec<String> = two.sqrt().iter().map(|r| r.to_text()).collect();
        assert_eq!(roots, vec!["3", "4"]);
    }

    #[test]
    fn build_extension_degree_one_is_base() {
        let f7 = PrimeField::from_u64(7).unwrap();
        assert_eq!(build_extension(&f7, 1).unwrap(), AnyField::Prime(f7.clone()));
        assert!(build_extension(&f7, 0).is_err());
        let e = build_extension(&f7, 2).unwrap();
        assert_eq!(e.order(), BigUint::from(49u32));
        let x = FieldElement::parse(&e, "0,1").unwrap();
        assert_eq!(x.mul(&x).unwrap().to_text(), "6,0");
    }
}
