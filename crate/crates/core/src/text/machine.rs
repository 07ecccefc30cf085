//! Line-oriented machine files:
//!
//! ```text
//! states: s0 q f
//! start: s0
//! final: f
//! alphabet: 0 1
//! blank: B
//! delta: s0 0 -> q 1 r
//! poly: 1 1
//! input: 0 1
//! ```
//!
//! `delta` may repeat; `blank` defaults to `B` and `input` to the empty word.
//! `#` and `%` start comments.

use std::fmt;

use super::TextError;
use crate::turing::{Direction, Machine, RuntimePolynomial, SymbolId};

/// A machine together with its runtime polynomial and input word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    pub machine: Machine,
    pub poly: RuntimePolynomial,
    pub input: Vec<SymbolId>,
}

const KEYS: [&str; 8] = ["states", "start", "final", "alphabet", "blank", "delta", "poly", "input"];

pub fn parse_machine(text: &str) -> Result<MachineSpec, TextError> {
    let mut single: [Option<(usize, Vec<&str>)>; 8] = Default::default();
    let mut deltas: Vec<(usize, usize, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split(['#', '%']).next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            return Err(syntax(line, 1, "expected `key: value`"));
        };
        let key = key.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        let Some(k) = KEYS.iter().position(|&w| w == key) else {
            let col = raw.find(key).map_or(1, |c| c + 1);
            return Err(syntax(line, col, &format!("unknown key `{key}`")));
        };
        if KEYS[k] == "delta" {
            deltas.push((line, body.find(':').unwrap() + 2, words));
        } else if single[k].is_some() {
            return Err(syntax(line, 1, &format!("duplicate key `{key}`")));
        } else {
            single[k] = Some((line, words));
        }
    }
    let get = |key: &str| single[KEYS.iter().position(|&w| w == key).unwrap()].clone();
    let required =
        |key: &str| get(key).ok_or_else(|| TextError::Semantic { line: 0, msg: format!("missing key `{key}`") });
    let one = |key: &str| -> Result<(usize, String), TextError> {
        let (line, words) = required(key)?;
        match words.as_slice() {
            [w] => Ok((line, w.to_string())),
            _ => Err(syntax(line, 1, &format!("`{key}` takes exactly one name"))),
        }
    };

    let (_, states) = required("states")?;
    let (start_line, start) = one("start")?;
    let (final_line, final_state) = one("final")?;
    let alphabet = get("alphabet").map(|(_, w)| w).unwrap_or_default();
    let blank = match get("blank") {
        None => "B".to_string(),
        Some(_) => one("blank")?.1,
    };
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut machine = Machine::new(owned(&states), owned(&alphabet), &blank, &start, &final_state).map_err(|e| {
        let line = match e {
            crate::turing::TuringError::UnknownState(ref s) if *s == start => start_line,
            crate::turing::TuringError::UnknownState(_) => final_line,
            _ => get("states").map_or(0, |(l, _)| l),
        };
        TextError::Semantic { line, msg: e.to_string() }
    })?;

    for (line, col, words) in deltas {
        let [q, a, arrow, q1, a1, d] = words.as_slice() else {
            return Err(syntax(line, col, "expected `q a -> q1 a1 d`"));
        };
        if *arrow != "->" {
            return Err(syntax(line, col, "expected `->` between the read and write halves"));
        }
        let dir = Direction::parse(d).ok_or_else(|| syntax(line, col, &format!("unknown direction `{d}`")))?;
        machine.add_transition(q, a, q1, a1, dir).map_err(|e| TextError::Semantic { line, msg: e.to_string() })?;
    }

    let (poly_line, coeffs) = required("poly")?;
    let coeffs = coeffs
        .iter()
        .map(|w| w.parse::<u64>().map_err(|_| syntax(poly_line, 1, &format!("`{w}` is not a natural number"))))
        .collect::<Result<Vec<_>, _>>()?;
    let poly =
        RuntimePolynomial::new(coeffs).map_err(|e| TextError::Semantic { line: poly_line, msg: e.to_string() })?;

    let (input_line, input) = get("input").unwrap_or((0, Vec::new()));
    let input = machine.input_word(&input).map_err(|e| TextError::Semantic { line: input_line, msg: e.to_string() })?;
    Ok(MachineSpec { machine, poly, input })
}

fn syntax(line: usize, col: usize, msg: &str) -> TextError {
    TextError::Syntax { line, col, msg: msg.to_string() }
}

impl fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.machine;
        writeln!(f, "states: {}", m.state_names().join(" "))?;
        writeln!(f, "start: {}", m.state_name(m.start()))?;
        writeln!(f, "final: {}", m.state_name(m.final_state()))?;
        writeln!(f, "alphabet: {}", m.input_names().join(" "))?;
        writeln!(f, "blank: {}", m.blank_name())?;
        for i in m.delta() {
            writeln!(
                f,
                "delta: {} {} -> {} {} {}",
                m.state_name(i.state),
                m.symbol_name(i.read),
                m.state_name(i.next),
                m.symbol_name(i.write),
                i.dir
            )?;
        }
        let coeffs: Vec<String> = self.poly.coeffs().iter().map(u64::to_string).collect();
        writeln!(f, "poly: {}", coeffs.join(" "))?;
        let input: Vec<&str> = self.input.iter().map(|&x| m.symbol_name(x)).collect();
        writeln!(f, "input: {}", input.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "states: s0 f\nstart: s0\nfinal: f\nalphabet: 1\ndelta: s0 B -> f B lambda\npoly: 2\n";

    #[test]
    fn minimal_file() {
        let spec = parse_machine(MINIMAL).unwrap();
        assert_eq!(spec.machine.delta().len(), 1);
        assert_eq!(spec.machine.blank_name(), "B");
        assert!(spec.input.is_empty());
        assert_eq!(parse_machine(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn polynomial_and_input() {
        let text = "states: s0 f\nstart: s0\nfinal: f\nalphabet: 0 1\npoly: 1 1\ninput: 0 1\n";
        let spec = parse_machine(text).unwrap();
        assert_eq!(spec.input.len(), 2);
        assert_eq!(spec.poly.eval(2), 3);
    }

    #[test]
    fn semantic_errors() {
        let bad_symbol = "states: s0 f\nstart: s0\nfinal: f\nalphabet: 0 1\ndelta: s0 2 -> f 2 r\npoly: 3\n";
        assert!(matches!(parse_machine(bad_symbol), Err(TextError::Semantic { line: 5, .. })));
        let bad_start = "states: s0 f\nstart: q\nfinal: f\nalphabet: 1\npoly: 3\n";
        assert!(matches!(parse_machine(bad_start), Err(TextError::Semantic { line: 2, .. })));
        let bad_poly = "states: s0 f\nstart: s0\nfinal: f\nalphabet: 1\npoly: 1 0\n";
        assert!(matches!(parse_machine(bad_poly), Err(TextError::Semantic { line: 5, .. })));
    }

    #[test]
    fn syntax_errors() {
        let unknown = format!("{MINIMAL}colour: red\n");
        assert!(matches!(parse_machine(&unknown), Err(TextError::Syntax { line: 7, .. })));
        let bad_dir = MINIMAL.replace("lambda", "up");
        assert!(matches!(parse_machine(&bad_dir), Err(TextError::Syntax { line: 5, .. })));
        let no_arrow = MINIMAL.replace("->", "=>");
        assert!(matches!(parse_machine(&no_arrow), Err(TextError::Syntax { line: 5, .. })));
        let dup = format!("{MINIMAL}start: f\n");
        assert!(matches!(parse_machine(&dup), Err(TextError::Syntax { line: 7, .. })));
    }
}
