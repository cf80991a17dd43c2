//! Dense-matrix oracle. Every operator is an explicit `2^n x 2^n` matrix built
//! entry by entry from Kronecker products of 2x2 blocks; nothing here calls
//! the engine. Qubit `q` is bit `q` of the basis index.

#![allow(dead_code)]

use num_complex::Complex64 as C;

pub const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub type Block = [[C; 2]; 2];

pub fn block(p: char) -> Block {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        'I' => [[l, o], [o, l]],
        'X' => [[o, l], [l, o]],
        'Y' => [[o, -i], [i, o]],
        'Z' => [[l, o], [o, -l]],
        'H' => [[c(H, 0.0), c(H, 0.0)], [c(H, 0.0), c(-H, 0.0)]],
        _ => panic!("unknown block {p}"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub dim: usize,
    pub data: Vec<C>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Mat {
            dim,
            data: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn at(&self, r: usize, col: usize) -> C {
        self.data[r * self.dim + col]
    }

    /// Kronecker product of one block per qubit: entry `(r, col)` is the
    /// product over qubits `q` of `blocks[q][bit_q(r)][bit_q(col)]`.
    pub fn kron(blocks: &[Block]) -> Self {
        let n = blocks.len();
        let dim = 1 << n;
        let mut m = Mat::zeros(dim);
        for r in 0..dim {
            for col in 0..dim {
                let mut v = c(1.0, 0.0);
                for (q, b) in blocks.iter().enumerate() {
                    v *= b[(r >> q) & 1][(col >> q) & 1];
                    if v == c(0.0, 0.0) {
                        break;
                    }
                }
                m.data[r * dim + col] = v;
            }
        }
        m
    }

    /// `"XIZ"`: character `q` acts on qubit `q`. A leading `-` negates.
    pub fn pauli(text: &str) -> Self {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let m = Mat::kron(&body.chars().map(block).collect::<Vec<_>>());
        if neg {
            m.scale(c(-1.0, 0.0))
        } else {
            m
        }
    }

    /// `p` on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, p: char) -> Self {
        let mut s: Vec<char> = vec!['I'; n];
        s[q] = p;
        Mat::pauli(&s.into_iter().collect::<String>())
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat {
            dim: self.dim,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.scale(c(-1.0, 0.0)))
    }

    pub fn scale(&self, k: C) -> Mat {
        Mat {
            dim: self.dim,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Matrix product; zero entries of `self` are skipped, which keeps the
    /// sparse operators used here cheap.
    pub fn mul(&self, o: &Mat) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for col in 0..d {
                    out.data[r * d + col] += a * o.data[k * d + col];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        let d = self.dim;
        (0..d)
            .map(|r| (0..d).map(|k| self.data[r * d + k] * v[k]).sum())
            .collect()
    }

    pub fn adjoint(&self) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for r in 0..d {
            for col in 0..d {
                out.data[col * d + r] = self.data[r * d + col].conj();
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, o: &Mat) -> f64 {
        self.sub(o).frobenius()
    }

    pub fn commutator_norm(&self, o: &Mat) -> f64 {
        self.mul(o).sub(&o.mul(self)).frobenius()
    }
}

pub fn basis(n: usize, index: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[index] = c(1.0, 0.0);
    v
}

pub fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[C]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

pub fn expectation(m: &Mat, v: &[C]) -> f64 {
    inner(v, &m.apply(v)).re
}

/// CNOT as a matrix: `|r> <col|` has weight 1 iff `r` is `col` with the
/// target bit flipped when the control bit is set.
pub fn cnot(n: usize, control: usize, target: usize) -> Mat {
    let dim = 1 << n;
    let mut m = Mat::zeros(dim);
    for col in 0..dim {
        let r = if (col >> control) & 1 == 1 {
            col ^ (1 << target)
        } else {
            col
        };
        m.data[r * dim + col] = c(1.0, 0.0);
    }
    m
}

/// `(|0..0> + |1..1>)/sqrt 2` on `qubits`, all other qubits `|0>`, built
/// from H and CNOT matrices.
pub fn ghz(n: usize, qubits: [usize; 3]) -> Vec<C> {
    let mut v = basis(n, 0);
    v = Mat::single(n, qubits[0], 'H').apply(&v);
    v = cnot(n, qubits[0], qubits[1]).apply(&v);
    cnot(n, qubits[0], qubits[2]).apply(&v)
}

/// Projector onto the `value` eigenspace of an involution.
pub fn projector(o: &Mat, value: f64) -> Mat {
    Mat::identity(o.dim)
        .add(&o.scale(c(value, 0.0)))
        .scale(c(0.5, 0.0))
}

/// `U = P+ + X_m P-` where `P±` project onto the eigenspaces of `o`.
pub fn premeasure_unitary(o: &Mat, n: usize, memory: usize) -> Mat {
    let xm = Mat::single(n, memory, 'X');
    projector(o, 1.0).add(&xm.mul(&projector(o, -1.0)))
}

/// Reduced density matrix of `keep` (in that bit order) from a pure state.
pub fn reduced(v: &[C], n: usize, keep: &[usize]) -> Mat {
    let k = keep.len();
    let dim = 1 << k;
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let mut rho = Mat::zeros(dim);
    let compose = |local: usize, env: usize| {
        let mut idx = 0;
        for (b, &q) in keep.iter().enumerate() {
            idx |= ((local >> b) & 1) << q;
        }
        for (b, &q) in rest.iter().enumerate() {
            idx |= ((env >> b) & 1) << q;
        }
        idx
    };
    for env in 0..1 << rest.len() {
        for r in 0..dim {
            for col in 0..dim {
                rho.data[r * dim + col] += v[compose(r, env)] * v[compose(col, env)].conj();
            }
        }
    }
    rho
}

pub fn to_vec(amplitudes: &[C]) -> Vec<C> {
    amplitudes.to_vec()
}

/// The nine-qubit sequential scenario, written out with dense matrices.
pub struct LmzOracle {
    pub n: usize,
    pub ghz: Vec<C>,
    pub alice_u: Vec<Mat>,
    pub alice_obs: Vec<Mat>,
    pub bob_obs: Vec<Mat>,
    pub bob_u: Vec<Mat>,
    pub stage1: Vec<C>,
}

impl LmzOracle {
    pub fn new() -> Self {
        let n = 9;
        let ghz = ghz(n, [0, 1, 2]);
        let alice_u: Vec<Mat> = (0..3)
            .map(|k| premeasure_unitary(&Mat::single(n, k, 'Y'), n, 3 + k))
            .collect();
        let mut stage1 = ghz.clone();
        for u in &alice_u {
            stage1 = u.apply(&stage1);
        }
        let alice_obs: Vec<Mat> = (0..3).map(|k| Mat::single(n, 3 + k, 'Z')).collect();
        let bob_obs: Vec<Mat> = (0..3)
            .map(|k| {
                let u = &alice_u[k];
                u.mul(&Mat::single(n, k, 'X')).mul(&u.adjoint())
            })
            .collect();
        let bob_u = (0..3)
            .map(|k| premeasure_unitary(&bob_obs[k], n, 6 + k))
            .collect();
        LmzOracle {
            n,
            ghz,
            alice_u,
            alice_obs,
            bob_obs,
            bob_u,
            stage1,
        }
    }

    /// Product observables of the four constraints, in constraint order.
    pub fn products(&self) -> Vec<Mat> {
        let (a, b) = (&self.alice_obs, &self.bob_obs);
        vec![
            b[0].mul(&b[1]).mul(&b[2]),
            b[0].mul(&a[1]).mul(&a[2]),
            a[0].mul(&b[1]).mul(&a[2]),
            a[0].mul(&a[1]).mul(&b[2]),
        ]
    }

    /// State after Bob's first `count` premeasurements.
    pub fn after_bob(&self, count: usize) -> Vec<C> {
        let mut v = self.stage1.clone();
        for u in &self.bob_u[..count] {
            v = u.apply(&v);
        }
        v
    }

    pub fn record(&self, qubits: [usize; 3]) -> Mat {
        Mat::single(self.n, qubits[0], 'Z')
            .mul(&Mat::single(self.n, qubits[1], 'Z'))
            .mul(&Mat::single(self.n, qubits[2], 'Z'))
    }
}
