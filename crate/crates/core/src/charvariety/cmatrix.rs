use num_complex::Complex64;

/// Dense complex square matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        CMatrix { dim, data }
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Self {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        CMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim;
        assert_eq!(n, other.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        CMatrix { dim: n, data: out }
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn pow(&self, k: u32) -> CMatrix {
        (0..k).fold(CMatrix::identity(self.dim), |acc, _| acc.mul(self))
    }

    /// Spectral radius from Gelfand's formula `lim ||M^N||^{1/N}` with
    /// `N = 2^j`, squaring a renormalized matrix so nothing overflows:
    /// with `B_0 = M`, `c_j = ||B_j||`, `B_{j+1} = (B_j / c_j)^2`,
    /// `log ρ = Σ_j log(c_j) / 2^j`.
    pub fn spectral_radius(&self) -> f64 {
        const SQUARINGS: usize = 64;
        let mut b = self.clone();
        let mut log_rho = 0.0f64;
        let mut weight = 1.0f64;
        for _ in 0..SQUARINGS {
            let c = b.frobenius_norm();
            if c == 0.0 {
                return 0.0;
            }
            log_rho += weight * c.ln();
            b = b.scale(1.0 / c);
            b = b.mul(&b);
            weight *= 0.5;
        }
        let c = b.frobenius_norm();
        if c == 0.0 {
            return 0.0;
        }
        (log_rho + weight * c.ln()).exp()
    }
}
