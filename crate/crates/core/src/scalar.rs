//! Scalar backends for the form machinery.
//!
//! Forms store bare elements; every operation receives a [`Scalars`] context that knows how to
//! combine them. Finite fields are table contexts ([`FieldDescriptor`]), characteristic-zero
//! scalars come from any `num-traits` number type through [`NumScalars`].

use std::fmt::Debug;
use std::marker::PhantomData;

use num_traits::{FromPrimitive, Num};

use crate::gf::{FieldDescriptor, GfElem};

pub trait Scalars {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

impl Scalars for FieldDescriptor {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        0
    }
    fn one(&self) -> GfElem {
        1
    }
    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        FieldDescriptor::add(self, *a, *b)
    }
    fn neg(&self, a: &GfElem) -> GfElem {
        FieldDescriptor::neg(self, *a)
    }
    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        FieldDescriptor::mul(self, *a, *b)
    }
    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        FieldDescriptor::inv(self, *a)
    }
    fn from_i64(&self, n: i64) -> GfElem {
        self.from_int(n)
    }
    fn characteristic(&self) -> u64 {
        self.characteristic() as u64
    }
    fn pow(&self, a: &GfElem, e: u32) -> GfElem {
        FieldDescriptor::pow(self, *a, e as u64)
    }
}

/// Characteristic-zero scalars backed by a `num-traits` type (rationals, floats).
pub struct NumScalars<T>(PhantomData<T>);

impl<T> NumScalars<T> {
    pub const fn new() -> Self {
        NumScalars(PhantomData)
    }
}

impl<T> Default for NumScalars<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumScalars<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for NumScalars<T> {}

impl<T> Debug for NumScalars<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumScalars<{}>", std::any::type_name::<T>())
    }
}

impl<T> Scalars for NumScalars<T>
where
    T: Num + Clone + Debug + FromPrimitive + std::ops::Neg<Output = T>,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }
    fn from_i64(&self, n: i64) -> T {
        T::from_i64(n).expect("integer representable in scalar type")
    }
    fn characteristic(&self) -> u64 {
        0
    }
}
