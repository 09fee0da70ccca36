use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

pub const MAX_QUBITS: u32 = 20;

/// Real amplitudes of an n-qubit register. Grover dynamics never leave the
/// real subspace, so complex phases are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: u32,
    amps: Vec<f64>,
}

impl Statevector {
    /// |0…0⟩.
    pub fn zero(qubits: u32) -> Result<Self> {
        if qubits > MAX_QUBITS {
            return Err(Error::Domain(format!("{qubits} qubits exceeds the {MAX_QUBITS}-qubit limit")));
        }
        let mut amps = vec![0.0; 1usize << qubits];
        amps[0] = 1.0;
        Ok(Statevector { qubits, amps })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    pub fn hadamard(&mut self, qubit: u32) {
        let stride = 1usize << qubit;
        for block in (0..self.amps.len()).step_by(2 * stride) {
            for i in block..block + stride {
                let (a, b) = (self.amps[i], self.amps[i + stride]);
                self.amps[i] = FRAC_1_SQRT_2 * (a + b);
                self.amps[i + stride] = FRAC_1_SQRT_2 * (a - b);
            }
        }
    }

    pub fn hadamard_all(&mut self) {
        for q in 0..self.qubits {
            self.hadamard(q);
        }
    }

    /// Oracle O: flips the sign of marked basis states.
    pub fn phase_flip(&mut self, marked: &[usize]) {
        for &k in marked {
            self.amps[k] = -self.amps[k];
        }
    }

    /// 2|ψ⟩⟨ψ| − I with |ψ⟩ the uniform superposition, built from gates:
    /// H⊗ⁿ (2|0⟩⟨0| − I) H⊗ⁿ.
    pub fn diffuse(&mut self) {
        self.hadamard_all();
        for a in self.amps.iter_mut().skip(1) {
            *a = -*a;
        }
        self.hadamard_all();
    }

    /// a_k ↦ 2·mean − a_k, the same map as [`Statevector::diffuse`].
    pub fn invert_about_mean(&mut self) {
        let mean = self.amps.iter().sum::<f64>() / self.amps.len() as f64;
        for a in self.amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }

    pub fn grover_iteration(&mut self, marked: &[usize]) {
        self.phase_flip(marked);
        self.diffuse();
    }

    pub fn probability_of(&self, states: &[usize]) -> f64 {
        states.iter().map(|&k| self.amps[k] * self.amps[k]).sum()
    }
}

/// Amplitudes after r Grover iterations from the uniform superposition.
pub fn statevector_grover(qubits: u32, marked: &[usize], r: u64) -> Result<Vec<f64>> {
    let mut sv = Statevector::zero(qubits)?;
    if marked.is_empty() {
        return Err(Error::Domain("marked set is empty".into()));
    }
    if let Some(&k) = marked.iter().find(|&&k| k >= sv.amps.len()) {
        return Err(Error::IndexOutOfRange {
            index: k as u64,
            len: sv.amps.len() as u64,
        });
    }
    sv.hadamard_all();
    for _ in 0..r {
        sv.grover_iteration(marked);
    }
    Ok(sv.amps)
}
