//! Human-readable rendering of reduction traces.

use std::fmt::Write;

use crate::reduction::{ReductionTrace, StepNode};
use crate::types::gcd;

fn render_node(out: &mut String, node: &StepNode, (r, d): (i64, i64), indent: usize) {
    let pad = "  ".repeat(indent);
    match node {
        StepNode::Base {
            rank,
            degree,
            twist_degree,
        } => {
            let _ = writeln!(
                out,
                "{pad}Bun({rank},{degree}) ≅ Bun({rank},0) via twist by degree {twist_degree}"
            );
        }
        StepNode::Composite(c) => {
            let h = gcd(r, d);
            let _ = writeln!(
                out,
                "{pad}Bun({r},{d}) --[rF={},dF={}]--> Gr_{h} over Bun({},{}) ; rkV={} h1={} ; +affine {}",
                c.r_f,
                c.d_f,
                c.r1,
                c.d1,
                c.rk_v,
                c.h1,
                c.rho_affine + c.hecke_affine
            );
            render_node(out, &c.mu1, (c.r1, c.d1), indent + 1);
            let _ = writeln!(
                out,
                "{pad}  Par^{h}_({},0) --θ2--> Bun({},{}) ; +affine {}",
                c.h1, c.h1, -h, c.hecke_affine
            );
            render_node(out, &c.mu2, (c.h1, -h), indent + 1);
        }
    }
}

/// One line per node, then a summary and the determinant ledger.
pub fn render_text(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    let (r, d, h) = (trace.input.rank, trace.input.degree, trace.h);
    let _ = writeln!(
        out,
        "genus {} : Bun({r},{d}) ⇢ Bun({h},0) x A^n, h={h}, n={}, depth={}",
        trace.genus,
        trace.total_affine_dim,
        trace.depth()
    );
    render_node(&mut out, &trace.root, (r, d), 0);
    let _ = writeln!(
        out,
        "det ledger: {} ; degree {d} ↦ {}",
        trace.composite_det,
        trace.composite_det.apply(d)
    );
    out
}
