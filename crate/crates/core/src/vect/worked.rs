//! The "all/some animals run" example.
//!
//! The published summands are replayed as written rather than recomputed: they
//! do not follow from the published tables (they skip the verb weights, and one
//! of them uses a cell the `some` table does not have). [`worked_example_model`]
//! holds the tables themselves, for evaluation by the engine.

use super::DistModel;

const ANIMALS_MODEL: &str = include_str!("../../assets/animals-model.json");

const SUMMANDS: [(&str, [&str; 3]); 2] = [
    ("all animals run", ["0.5×(0.4×0.9+0.3×0.2)", "0.4×(0.5×0.7+0.3×0.3)", "0.3×(0.5×0.5+0.4×0.3)"]),
    ("some animals run", ["0.5×(0.4×0.3+0.5×0.2)", "0.4×(0.5×0.9+0.3×0.5)", "0.3×(0.5×0.6+0.4×0.5)"]),
];

#[derive(Clone, PartialEq, Debug)]
pub struct WorkedCell {
    pub basis: String,
    pub expression: String,
    pub value: f64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct WorkedRow {
    pub sentence: String,
    pub cells: Vec<WorkedCell>,
}

pub fn reproduce_worked_example() -> Vec<WorkedRow> {
    SUMMANDS
        .iter()
        .map(|(sentence, exprs)| WorkedRow {
            sentence: sentence.to_string(),
            cells: exprs
                .iter()
                .enumerate()
                .map(|(k, e)| WorkedCell {
                    basis: format!("s{}", k + 1),
                    expression: e.to_string(),
                    value: eval_expression(e).expect("built-in expressions are well formed"),
                })
                .collect(),
        })
        .collect()
}

/// The example's feature sets, vectors and determiner tables.
pub fn worked_example_model() -> DistModel<f64> {
    DistModel::from_json(ANIMALS_MODEL).expect("bundled model is valid")
}

/// Evaluates `+`, `×` (or `*`) and parentheses over decimal literals.
pub fn eval_expression(text: &str) -> Result<f64, String> {
    let tokens = lex(text)?;
    let mut pos = 0;
    let v = sum(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("unexpected `{:?}` in `{text}`", tokens[pos]));
    }
    Ok(v)
}

#[derive(Clone, Copy, PartialEq, Debug)]
enum Tok {
    Num(f64),
    Plus,
    Times,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            ' ' => {}
            '+' => out.push(Tok::Plus),
            '×' | '*' => out.push(Tok::Times),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            '0'..='9' | '.' => {
                let mut end = i + c.len_utf8();
                while let Some((j, d)) = chars.peek().copied() {
                    if d.is_ascii_digit() || d == '.' {
                        end = j + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let lit = &text[i..end];
                out.push(Tok::Num(lit.parse().map_err(|_| format!("bad number `{lit}`"))?));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

fn sum(t: &[Tok], pos: &mut usize) -> Result<f64, String> {
    let mut v = product(t, pos)?;
    while t.get(*pos) == Some(&Tok::Plus) {
        *pos += 1;
        v += product(t, pos)?;
    }
    Ok(v)
}

fn product(t: &[Tok], pos: &mut usize) -> Result<f64, String> {
    let mut v = atom(t, pos)?;
    while t.get(*pos) == Some(&Tok::Times) {
        *pos += 1;
        v *= atom(t, pos)?;
    }
    Ok(v)
}

fn atom(t: &[Tok], pos: &mut usize) -> Result<f64, String> {
    match t.get(*pos) {
        Some(Tok::Num(x)) => {
            *pos += 1;
            Ok(*x)
        }
        Some(Tok::Open) => {
            *pos += 1;
            let v = sum(t, pos)?;
            if t.get(*pos) != Some(&Tok::Close) {
                return Err("missing `)`".into());
            }
            *pos += 1;
            Ok(v)
        }
        other => Err(format!("expected a number or `(`, found {other:?}")),
    }
}
