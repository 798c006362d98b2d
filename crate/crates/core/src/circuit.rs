//! Gate-level realization of one walk step, a statevector simulator to check
//! it, circuit metrics, and OpenQASM 2.0 export.
//!
//! Register layout: qubit 0 is the spin, qubits `1..=n` hold the position
//! big-endian (qubit 1 is the most significant bit). Qubit `q` of an
//! `m`-qubit register is bit `m − 1 − q` of the basis-state index, so the
//! spin-major [`SpinorField`](crate::state::SpinorField) layout is exactly
//! the register's computational basis order.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::evolution::WalkParams;

/// Register width up to which [`QCircuit::unitary`] is allowed.
pub const DENSE_QUBIT_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Phase { target: usize, lambda: f64 },
    /// Phase `e^{iλ}` on target `|1⟩` when the control is in `control_state`.
    CPhase {
        control: usize,
        control_state: bool,
        target: usize,
        lambda: f64,
    },
    Rx { target: usize, theta: f64 },
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) => vec![q],
            Gate::Phase { target, .. } | Gate::Rx { target, .. } => vec![target],
            Gate::CPhase {
                control, target, ..
            } => vec![control, target],
            Gate::Swap(a, b) => vec![a, b],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::CPhase { .. } | Gate::Swap(..))
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Phase { target, lambda } => Gate::Phase {
                target,
                lambda: -lambda,
            },
            Gate::CPhase {
                control,
                control_state,
                target,
                lambda,
            } => Gate::CPhase {
                control,
                control_state,
                target,
                lambda: -lambda,
            },
            Gate::Rx { target, theta } => Gate::Rx {
                target,
                theta: -theta,
            },
            g => g,
        }
    }

    fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Phase { lambda, .. } | Gate::CPhase { lambda, .. } => Some(lambda),
            Gate::Rx { theta, .. } => Some(theta),
            _ => None,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= n_qubits) {
            return Err(WalkError::InvalidGate(format!(
                "qubit {q} outside {n_qubits}-qubit register"
            )));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(WalkError::InvalidGate(format!(
                "repeated qubit {} in {self:?}",
                qs[0]
            )));
        }
        if self.angle().is_some_and(|a| !a.is_finite()) {
            return Err(WalkError::InvalidGate(format!("non-finite angle in {self:?}")));
        }
        Ok(())
    }
}

/// Ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct QCircuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl QCircuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Adjoint circuit: reversed order, negated angles.
    pub fn inverse(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Dense unitary, column `b` being the image of basis state `b`.
    pub fn unitary(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > DENSE_QUBIT_LIMIT {
            return Err(WalkError::TooLarge {
                n_sites: 1 << self.n_qubits,
                limit: 1 << DENSE_QUBIT_LIMIT,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut u = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[b] = Complex64::new(1.0, 0.0);
            let out = simulate_statevector(self, &v)?;
            u.set_column(b, &nalgebra::DVector::from_vec(out));
        }
        Ok(u)
    }
}

/// Quantum Fourier transform on qubits `first..first + n_pos`, big-endian.
fn qft_gates(first: usize, n_pos: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for i in 0..n_pos {
        gates.push(Gate::H(first + i));
        for j in i + 1..n_pos {
            gates.push(Gate::CPhase {
                control: first + j,
                control_state: true,
                target: first + i,
                lambda: PI / (1u64 << (j - i)) as f64,
            });
        }
    }
    for i in 0..n_pos / 2 {
        gates.push(Gate::Swap(first + i, first + n_pos - 1 - i));
    }
    gates
}

/// QFT circuit on `n_pos` qubits realizing `ω^{jl}/√N`, `N = 2^{n_pos}`.
pub fn build_qft(n_pos: usize) -> QCircuit {
    QCircuit {
        n_qubits: n_pos,
        gates: qft_gates(0, n_pos),
    }
}

/// Phase ladder `diag(ω^{±j·δt})` on the position register, conditioned on the spin.
fn phase_ladder(n_pos: usize, n_sites: usize, dt: f64, spin_state: bool, sign: f64) -> Vec<Gate> {
    (1..=n_pos)
        .map(|q| {
            let weight = (1u64 << (n_pos - q)) as f64;
            Gate::CPhase {
                control: 0,
                control_state: spin_state,
                target: q,
                lambda: sign * TAU * weight * dt / n_sites as f64,
            }
        })
        .collect()
}

/// Circuit for one walk step: QFT, spin-controlled `Q₊^{δt}` on `ψ_L`,
/// `RX(θ)` on the spin, anti-controlled `Q₋^{δt}` on `ψ_R`, inverse QFT.
pub fn build_step_circuit(params: &WalkParams) -> QCircuit {
    let n_sites = params.n_sites();
    let n_pos = n_sites.trailing_zeros() as usize;
    let qft = qft_gates(1, n_pos);
    let mut gates = qft.clone();
    gates.extend(phase_ladder(n_pos, n_sites, params.dt(), true, 1.0));
    gates.push(Gate::Rx {
        target: 0,
        theta: params.theta(),
    });
    gates.extend(phase_ladder(n_pos, n_sites, params.dt(), false, -1.0));
    gates.extend(qft.iter().rev().map(Gate::inverse));
    QCircuit {
        n_qubits: 1 + n_pos,
        gates,
    }
}

fn check_dim(circ: &QCircuit, len: usize) -> Result<()> {
    let dim = 1usize << circ.n_qubits;
    if len != dim {
        return Err(WalkError::LengthMismatch {
            expected: dim,
            got: len,
        });
    }
    Ok(())
}

/// Applies `circ` to a statevector.
pub fn simulate_statevector(circ: &QCircuit, input: &[Complex64]) -> Result<Vec<Complex64>> {
    check_dim(circ, input.len())?;
    let mut psi = input.to_vec();
    let n = circ.n_qubits;
    let mask = |q: usize| 1usize << (n - 1 - q);
    for gate in &circ.gates {
        match *gate {
            Gate::H(q) => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                apply_1q(&mut psi, mask(q), [[h.into(), h.into()], [h.into(), (-h).into()]]);
            }
            Gate::X(q) => {
                let m = mask(q);
                for i in (0..psi.len()).filter(|i| i & m == 0) {
                    psi.swap(i, i | m);
                }
            }
            Gate::Rx { target, theta } => {
                let (s, c) = (theta / 2.0).sin_cos();
                let (c, mis) = (Complex64::new(c, 0.0), Complex64::new(0.0, -s));
                apply_1q(&mut psi, mask(target), [[c, mis], [mis, c]]);
            }
            Gate::Phase { target, lambda } => {
                let (m, ph) = (mask(target), Complex64::from_polar(1.0, lambda));
                psi.iter_mut()
                    .enumerate()
                    .filter(|(i, _)| i & m != 0)
                    .for_each(|(_, a)| *a *= ph);
            }
            Gate::CPhase {
                control,
                control_state,
                target,
                lambda,
            } => {
                let (mc, mt) = (mask(control), mask(target));
                let ph = Complex64::from_polar(1.0, lambda);
                psi.iter_mut()
                    .enumerate()
                    .filter(|(i, _)| (i & mc != 0) == control_state && i & mt != 0)
                    .for_each(|(_, a)| *a *= ph);
            }
            Gate::Swap(a, b) => {
                let (ma, mb) = (mask(a), mask(b));
                for i in (0..psi.len()).filter(|i| i & ma != 0 && i & mb == 0) {
                    psi.swap(i, (i & !ma) | mb);
                }
            }
        }
    }
    Ok(psi)
}

fn apply_1q(psi: &mut [Complex64], m: usize, u: [[Complex64; 2]; 2]) {
    for i in 0..psi.len() {
        if i & m == 0 {
            let (a, b) = (psi[i], psi[i | m]);
            psi[i] = u[0][0] * a + u[0][1] * b;
            psi[i | m] = u[1][0] * a + u[1][1] * b;
        }
    }
}

/// Layered depth and gate counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitMetrics {
    pub depth: usize,
    pub one_qubit: usize,
    pub two_qubit: usize,
}

/// Greedy as-soon-as-possible layering: a gate goes one layer after the
/// latest layer touching any of its qubits.
pub fn depth_and_counts(circ: &QCircuit) -> CircuitMetrics {
    let mut frontier = vec![0usize; circ.n_qubits];
    let mut metrics = CircuitMetrics {
        depth: 0,
        one_qubit: 0,
        two_qubit: 0,
    };
    for gate in &circ.gates {
        let qs = gate.qubits();
        let layer = qs.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
        qs.iter().for_each(|&q| frontier[q] = layer);
        metrics.depth = metrics.depth.max(layer);
        if gate.is_two_qubit() {
            metrics.two_qubit += 1;
        } else {
            metrics.one_qubit += 1;
        }
    }
    metrics
}

/// One point of the depth-versus-lattice-size curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthRow {
    pub n_sites: usize,
    pub metrics: CircuitMetrics,
}

/// Step-circuit metrics for each lattice size (δt and m do not change the gate structure).
pub fn depth_curve(sizes: &[usize], dt: f64, mass: f64) -> Result<Vec<DepthRow>> {
    sizes
        .iter()
        .map(|&n| {
            let params = WalkParams::new(n, dt, mass, 0)?;
            Ok(DepthRow {
                n_sites: n,
                metrics: depth_and_counts(&build_step_circuit(&params)),
            })
        })
        .collect()
}

fn fmt_angle(a: f64) -> String {
    format!("{a:.16e}")
}

/// OpenQASM 2.0 text. Anti-controlled phases are lowered to an X-conjugated
/// `cu1` written on a single line, which [`parse_qasm`] folds back.
pub fn export_qasm(circ: &QCircuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circ.n_qubits);
    for gate in &circ.gates {
        let _ = match *gate {
            Gate::H(q) => writeln!(out, "h q[{q}];"),
            Gate::X(q) => writeln!(out, "x q[{q}];"),
            Gate::Phase { target, lambda } => {
                writeln!(out, "u1({}) q[{target}];", fmt_angle(lambda))
            }
            Gate::CPhase {
                control,
                control_state: true,
                target,
                lambda,
            } => writeln!(out, "cu1({}) q[{control}],q[{target}];", fmt_angle(lambda)),
            Gate::CPhase {
                control,
                control_state: false,
                target,
                lambda,
            } => writeln!(
                out,
                "x q[{control}]; cu1({}) q[{control}],q[{target}]; x q[{control}];",
                fmt_angle(lambda)
            ),
            Gate::Rx { target, theta } => writeln!(out, "rx({}) q[{target}];", fmt_angle(theta)),
            Gate::Swap(a, b) => writeln!(out, "swap q[{a}],q[{b}];"),
        };
    }
    out
}

fn parse_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('-') {
        return parse_angle(rest).map(|a| -a);
    }
    if let Some(rest) = s.strip_prefix("pi") {
        let rest = rest.trim();
        if rest.is_empty() {
            return Some(PI);
        }
        return rest.strip_prefix('/')?.trim().parse::<f64>().ok().map(|d| PI / d);
    }
    s.parse().ok()
}

fn parse_qubit(s: &str) -> Option<usize> {
    s.trim().strip_prefix("q[")?.strip_suffix(']')?.parse().ok()
}

/// `name(arg) operands` split into its parts.
fn split_statement(stmt: &str) -> Option<(&str, Option<f64>, Vec<usize>)> {
    let stmt = stmt.trim();
    let (head, operands) = match stmt.find(')') {
        Some(close) => (&stmt[..=close], &stmt[close + 1..]),
        None => stmt.split_at(stmt.find(' ')?),
    };
    let (name, arg) = match head.split_once('(') {
        Some((name, arg)) => (name.trim(), Some(parse_angle(arg.strip_suffix(')')?)?)),
        None => (head.trim(), None),
    };
    let qubits = operands
        .split(',')
        .map(parse_qubit)
        .collect::<Option<Vec<_>>>()?;
    Some((name, arg, qubits))
}

/// Parses the subset of OpenQASM 2.0 emitted by [`export_qasm`].
pub fn parse_qasm(text: &str) -> Result<QCircuit> {
    let mut circ: Option<QCircuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: &str| WalkError::QasmParse {
            line: line_no,
            msg: msg.to_string(),
        };
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let stmts: Vec<&str> = line
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if let Some(rest) = line.strip_prefix("qreg") {
            let n = rest
                .trim()
                .trim_end_matches(';')
                .strip_prefix("q[")
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| err("bad qreg declaration"))?;
            circ = Some(QCircuit::new(n));
            continue;
        }
        let c = circ.as_mut().ok_or_else(|| err("gate before qreg"))?;
        let parsed = stmts
            .iter()
            .map(|s| split_statement(s))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| err("malformed statement"))?;
        let gate = match parsed.as_slice() {
            [("x", None, a), ("cu1", Some(lambda), cu), ("x", None, b)]
                if a.len() == 1 && a == b && cu.len() == 2 && cu[0] == a[0] =>
            {
                Gate::CPhase {
                    control: cu[0],
                    control_state: false,
                    target: cu[1],
                    lambda: *lambda,
                }
            }
            [(name, arg, qs)] => match (*name, *arg, qs.as_slice()) {
                ("h", None, &[q]) => Gate::H(q),
                ("x", None, &[q]) => Gate::X(q),
                ("u1", Some(lambda), &[target]) => Gate::Phase { target, lambda },
                ("cu1", Some(lambda), &[control, target]) => Gate::CPhase {
                    control,
                    control_state: true,
                    target,
                    lambda,
                },
                ("rx", Some(theta), &[target]) => Gate::Rx { target, theta },
                ("swap", None, &[a, b]) => Gate::Swap(a, b),
                _ => return Err(err(&format!("unsupported gate `{}`", stmts[0]))),
            },
            _ => return Err(err("unsupported statement sequence")),
        };
        c.push(gate).map_err(|e| err(&e.to_string()))?;
    }
    circ.ok_or(WalkError::QasmParse {
        line: 0,
        msg: "missing qreg".into(),
    })
}
