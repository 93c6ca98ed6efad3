//! Capacities and detection bounds of the ping-pong protocol family.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::Result;
use crate::info::{curve_grid, info_curve, FrequencyTable};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolDescriptor {
    pub name: &'static str,
    /// Dimension of each carrier (2 for qubits, 3 for qutrits).
    pub carrier_dimension: u32,
    /// Particles per entangled state.
    pub group_size: u32,
    /// Bits per cycle.
    pub capacity_bits: f64,
    #[serde(serialize_with = "ratio_as_string")]
    pub d_max: Ratio<u64>,
    #[serde(serialize_with = "ratio_as_string")]
    pub d_min: Ratio<u64>,
}

fn ratio_as_string<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ProtocolDescriptor {
    fn new(name: &'static str, carrier_dimension: u32, group_size: u32, capacity_bits: f64, d_max: Ratio<u64>) -> Self {
        // With equal basis weights and one basis left undisturbed, the blend halves d_max.
        let d_min = d_max / 2;
        Self { name, carrier_dimension, group_size, capacity_bits, d_max, d_min }
    }
}

/// The four protocol variants: qutrit Bell pairs, qubit Bell pairs, GHZ triplets and GHZ
/// quadruples of qubits.
pub fn protocol_table() -> Vec<ProtocolDescriptor> {
    vec![
        ProtocolDescriptor::new("qutrit Bell pairs", 3, 2, 9f64.log2(), Ratio::new(2, 3)),
        ProtocolDescriptor::new("qubit Bell pairs", 2, 2, 2.0, Ratio::new(1, 2)),
        ProtocolDescriptor::new("GHZ triplets of qubits", 2, 3, 3.0, Ratio::new(3, 4)),
        ProtocolDescriptor::new("GHZ quadruples of qubits", 2, 4, 4.0, Ratio::new(7, 8)),
    ]
}

/// Aligned text rendering of [`protocol_table`].
pub fn render_table(rows: &[ProtocolDescriptor]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<26} {:>4} {:>6} {:>9} {:>6} {:>6}", "protocol", "dim", "group", "bits", "d_min", "d_max");
    for r in rows {
        let _ = writeln!(
            out,
            "{:<26} {:>4} {:>6} {:>9.4} {:>6} {:>6}",
            r.name, r.carrier_dimension, r.group_size, r.capacity_bits, r.d_min.to_string(), r.d_max.to_string()
        );
    }
    out
}

/// CSV `d,I0_bits` of the qutrit information curve, for plotting next to qubit-protocol curves.
pub fn comparison_curve_data(freq: &FrequencyTable, points: usize) -> Result<String> {
    let curve = info_curve(freq, &curve_grid(points)?)?;
    let mut out = String::new();
    out.push_str("# qutrit Bell-pair protocol only; qubit-protocol curves are not computed here\n");
    out.push_str("d,I0_bits\n");
    for p in curve {
        let _ = writeln!(out, "{:.16e},{:.16e}", p.d_z, p.i0_bits());
    }
    Ok(out)
}
