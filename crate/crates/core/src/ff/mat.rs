//! Dense square matrices over the base field `F_q`, entries stored as `u8`
//! codes in row-major order.

use std::fmt;

use super::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    e: Vec<u8>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat {
            n,
            e: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.e[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: u8) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.e[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        let mut e = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            e.extend(r.iter().map(|&x| x as u8));
        }
        Mat { n, e }
    }

    pub fn from_entries(n: usize, e: Vec<u8>) -> Self {
        assert_eq!(e.len(), n * n);
        Mat { n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u8] {
        &self.e
    }

    pub fn entries_mut(&mut self) -> &mut [u8] {
        &mut self.e
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.e[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.e[r * self.n + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.e
            .chunks(self.n)
            .map(|r| r.iter().map(|&x| x as u32).collect())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        for r in self.e.chunks(self.n) {
            let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Field {
    /// `out = a * b`; `out` must not alias the inputs.
    #[inline]
    pub fn mat_mul_into(&self, n: usize, a: &[u8], b: &[u8], out: &mut [u8]) {
        if self.is_prime_field() {
            let p = self.q();
            for i in 0..n {
                let row = &a[i * n..i * n + n];
                for j in 0..n {
                    let mut acc = 0u32;
                    for k in 0..n {
                        acc += row[k] as u32 * b[k * n + j] as u32;
                    }
                    out[i * n + j] = (acc % p) as u8;
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0u8;
                    for k in 0..n {
                        acc = self.add8(acc, self.mul8(a[i * n + k], b[k * n + j]));
                    }
                    out[i * n + j] = acc;
                }
            }
        }
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let mut out = Mat::zero(a.n);
        self.mat_mul_into(a.n, &a.e, &b.e, &mut out.e);
        out
    }

    pub fn mat_add(&self, a: &Mat, b: &Mat) -> Mat {
        let e = a.e.iter().zip(&b.e).map(|(&x, &y)| self.add8(x, y)).collect();
        Mat { n: a.n, e }
    }

    pub fn mat_sub(&self, a: &Mat, b: &Mat) -> Mat {
        let e =
            a.e.iter()
                .zip(&b.e)
                .map(|(&x, &y)| self.add8(x, self.neg8(y)))
                .collect();
        Mat { n: a.n, e }
    }

    pub fn mat_scale(&self, a: &Mat, c: u8) -> Mat {
        let e = a.e.iter().map(|&x| self.mul8(x, c)).collect();
        Mat { n: a.n, e }
    }

    pub fn mat_pow(&self, a: &Mat, mut e: u64) -> Mat {
        let mut base = a.clone();
        let mut acc = Mat::identity(a.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix-vector product.
    pub fn mat_apply(&self, a: &Mat, v: &[u8]) -> Vec<u8> {
        (0..a.n)
            .map(|i| {
                (0..a.n).fold(0u8, |acc, k| self.add8(acc, self.mul8(a.get(i, k), v[k])))
            })
            .collect()
    }

    pub fn mat_det(&self, a: &Mat) -> u8 {
        let n = a.n;
        let mut m = a.e.clone();
        let mut det = 1u8;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for c in 0..n {
                    m.swap(piv * n + c, col * n + c);
                }
                det = self.neg8(det);
            }
            let pv = m[col * n + col];
            det = self.mul8(det, pv);
            let ip = self.inv8(pv);
            for r in col + 1..n {
                let f = self.mul8(m[r * n + col], ip);
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    let v = self.mul8(f, m[col * n + c]);
                    m[r * n + c] = self.add8(m[r * n + c], self.neg8(v));
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn mat_inv(&self, a: &Mat) -> Option<Mat> {
        let n = a.n;
        let mut m = a.e.clone();
        let mut inv = Mat::identity(n).e;
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r * n + col] != 0)?;
            if piv != col {
                for c in 0..n {
                    m.swap(piv * n + c, col * n + c);
                    inv.swap(piv * n + c, col * n + c);
                }
            }
            let ip = self.inv8(m[col * n + col]);
            for c in 0..n {
                m[col * n + c] = self.mul8(m[col * n + c], ip);
                inv[col * n + c] = self.mul8(inv[col * n + c], ip);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m[r * n + col];
                if f == 0 {
                    continue;
                }
                let nf = self.neg8(f);
                for c in 0..n {
                    m[r * n + c] = self.add8(m[r * n + c], self.mul8(nf, m[col * n + c]));
                    inv[r * n + c] = self.add8(inv[r * n + c], self.mul8(nf, inv[col * n + c]));
                }
            }
        }
        Some(Mat { n, e: inv })
    }

    /// Reduced row-echelon form of the row space of `rows` (each of length
    /// `width`); zero rows are dropped.
    pub fn rref(&self, rows: &[Vec<u8>], width: usize) -> Vec<Vec<u8>> {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let mut rank = 0;
        for col in 0..width {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let ip = self.inv8(m[rank][col]);
            for c in 0..width {
                m[rank][c] = self.mul8(m[rank][c], ip);
            }
            for r in 0..m.len() {
                if r == rank || m[r][col] == 0 {
                    continue;
                }
                let nf = self.neg8(m[r][col]);
                for c in 0..width {
                    let v = self.mul8(nf, m[rank][c]);
                    m[r][c] = self.add8(m[r][c], v);
                }
            }
            rank += 1;
        }
        m.truncate(rank);
        m
    }

    /// Reduced echelon basis (as rows) of the column space of `a`.
    pub fn column_space(&self, a: &Mat) -> Vec<Vec<u8>> {
        let cols: Vec<Vec<u8>> = (0..a.n).map(|c| a.column(c)).collect();
        self.rref(&cols, a.n)
    }
}
