//! Step-by-step run tables.

use std::fmt::Write;

use crate::turing::{Instruction, Machine, Run};

fn instruction(m: &Machine, i: &Instruction) -> String {
    format!(
        "{} {} -> {} {} {}",
        m.state_name(i.state),
        m.symbol_name(i.read),
        m.state_name(i.next),
        m.symbol_name(i.write),
        i.dir
    )
}

/// One row per configuration: time, state, head cell, tape with the head
/// cell bracketed, and the instruction about to execute.
pub fn format_run(m: &Machine, run: &Run) -> String {
    let header = ["t", "state", "head", "tape", "instruction"].map(String::from);
    let rows: Vec<[String; 5]> = run
        .configs
        .iter()
        .enumerate()
        .map(|(t, c)| {
            let tape: Vec<String> = c
                .tape
                .iter()
                .enumerate()
                .map(
                    |(k, &x)| {
                        if k == c.head {
                            format!("[{}]", m.symbol_name(x))
                        } else {
                            m.symbol_name(x).to_string()
                        }
                    },
                )
                .collect();
            [
                t.to_string(),
                m.state_name(c.instr.state).to_string(),
                c.head.to_string(),
                tape.join(" "),
                instruction(m, &c.instr),
            ]
        })
        .collect();
    let mut width = [0usize; 5];
    for r in std::iter::once(&header).chain(&rows) {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(&header).chain(&rows) {
        for (k, cell) in r.iter().enumerate() {
            if k + 1 == r.len() {
                out.push_str(cell);
            } else {
                let _ = write!(out, "{cell:<w$}  ", w = width[k]);
            }
        }
        out.push('\n');
    }
    out
}

/// Runs in the given order, numbered from 1 and separated by blank lines.
pub fn format_runs(m: &Machine, runs: &[Run]) -> String {
    if runs.is_empty() {
        return "no valid runs\n".to_string();
    }
    let mut out = String::new();
    for (i, r) in runs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "run {} of {}", i + 1, runs.len());
        out.push_str(&format_run(m, r));
    }
    out
}
