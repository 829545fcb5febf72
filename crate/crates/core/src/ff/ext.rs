//! `F_{q^d}` viewed as a `d`-dimensional `F_q`-space in the basis
//! `1, tau, ..., tau^{d-1}`. Matrices act on coordinate columns.

use super::field::ExtField;
use super::mat::Mat;
use super::poly::prime_factors;
use super::FiniteField;
use crate::error::{Error, Result};

impl ExtField {
    fn linear_map_matrix(&self, image: impl Fn(u32) -> u32) -> Mat {
        let d = self.degree();
        let q = self.base().q();
        let mut m = Mat::zero(d);
        let mut basis = 1u32;
        for col in 0..d {
            let coords = self.coords(image(basis));
            for (row, &c) in coords.iter().enumerate() {
                m.set(row, col, c as u8);
            }
            basis *= q;
        }
        m
    }

    /// Matrix of `x -> x^(q^i)`; `i = 0` gives the identity.
    pub fn frobenius_matrix(&self, i: usize) -> Result<Mat> {
        if i >= self.degree().max(1) {
            return Err(Error::invalid(format!(
                "Frobenius power {i} outside 0..{}",
                self.degree()
            )));
        }
        Ok(self.linear_map_matrix(|x| self.frobenius(x, i)))
    }

    /// Matrix of multiplication by `a`.
    pub fn regular_rep(&self, a: u32) -> Mat {
        self.linear_map_matrix(|x| self.mul(a, x))
    }

    /// `(q^d - 1)/(q - 1)`, the order of `F_{q^d}^x / F_q^x`.
    pub fn quotient_order(&self) -> u64 {
        let q = self.base().q() as u64;
        (q.pow(self.degree() as u32) - 1) / (q - 1)
    }

    /// Whether `u` generates `F_{q^d}^x / F_q^x`.
    pub fn generates_quotient(&self, u: u32) -> bool {
        if u == 0 {
            return false;
        }
        let n = self.quotient_order();
        if !self.in_base(self.pow(u, n)) {
            return false;
        }
        prime_factors(n)
            .into_iter()
            .all(|l| !self.in_base(self.pow(u, n / l)))
    }

    /// An element generating `F_{q^d}^x / F_q^x`: `tau` if it qualifies,
    /// otherwise the smallest qualifying code.
    pub fn mult_generator(&self) -> u32 {
        let tau = self.tau();
        if self.generates_quotient(tau) {
            return tau;
        }
        (1..self.order())
            .find(|&u| self.generates_quotient(u))
            .expect("the quotient group is cyclic")
    }
}
