//! Linear notation for terms.
//!
//! ```text
//! term  := atom | "(" term " (x) " term ")" | "(" term " o " term ")"
//! atom  := "id[" wires "]" | "swap[" wire "," wire "]"
//!        | ("eps" | "eta" | "delta" | "mu" | "iota" | "zeta") "[" wire "]"
//!        | "state[" word ":" wires "]" | "det[" word "]" | "gq[" quantifier "]"
//! wires := ε | wire ("," wire)*
//! ```
//!
//! `(f o g)` is `f ∘ g`: `g` runs first. Words may not contain `]`.

use thiserror::Error;

use super::{DetRef, MorphismTerm, WireType, wires_to_string};

pub fn render(term: &MorphismTerm) -> String {
    let mut out = String::new();
    write_term(term, &mut out);
    out
}

fn write_term(term: &MorphismTerm, out: &mut String) {
    use MorphismTerm::*;
    match term {
        WordState { word, wires } => {
            out.push_str(&format!("state[{word}:{}]", wires_to_string(wires)));
        }
        Epsilon(x) => out.push_str(&format!("eps[{x}]")),
        Eta(x) => out.push_str(&format!("eta[{x}]")),
        Delta(x) => out.push_str(&format!("delta[{x}]")),
        Mu(x) => out.push_str(&format!("mu[{x}]")),
        Iota(x) => out.push_str(&format!("iota[{x}]")),
        Zeta(x) => out.push_str(&format!("zeta[{x}]")),
        Id(wires) => out.push_str(&format!("id[{}]", wires_to_string(wires))),
        Swap(a, b) => out.push_str(&format!("swap[{a},{b}]")),
        DetBox(d) => out.push_str(&d.to_string()),
        Tensor(l, r) => {
            out.push('(');
            write_term(l, out);
            out.push_str(" (x) ");
            write_term(r, out);
            out.push(')');
        }
        Compose(after, before) => {
            out.push('(');
            write_term(after, out);
            out.push_str(" o ");
            write_term(before, out);
            out.push(')');
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("term syntax error at byte {offset}: {message}")]
pub struct RenderParseError {
    pub offset: usize,
    pub message: String,
}

pub fn parse_term(text: &str) -> Result<MorphismTerm, RenderParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> RenderParseError {
        RenderParseError { offset: self.pos, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), RenderParseError> {
        if self.eat(s) { Ok(()) } else { Err(self.error(format!("expected `{s}`"))) }
    }

    fn term(&mut self) -> Result<MorphismTerm, RenderParseError> {
        if self.eat("(") {
            self.skip_ws();
            let left = self.term()?;
            self.skip_ws();
            let tensor = if self.eat("(x)") {
                true
            } else if self.eat("o") {
                false
            } else {
                return Err(self.error("expected `(x)` or `o`"));
            };
            self.skip_ws();
            let right = self.term()?;
            self.skip_ws();
            self.expect(")")?;
            return Ok(if tensor { left.tensor(right) } else { left.after(right) });
        }
        self.atom()
    }

    /// Contents of `[...]`, after the opening bracket has been consumed.
    fn bracketed(&mut self) -> Result<&str, RenderParseError> {
        let start = self.pos;
        let len = self.rest().find(']').ok_or_else(|| self.error("unclosed `[`"))?;
        self.pos += len + 1;
        Ok(&self.src[start..start + len])
    }

    fn atom(&mut self) -> Result<MorphismTerm, RenderParseError> {
        let start = self.pos;
        let name_len = self.rest().find('[').ok_or_else(|| self.error("expected a generator"))?;
        let name = &self.src[start..start + name_len];
        self.pos += name_len + 1;
        let body_at = self.pos;
        let body = self.bracketed()?;
        let bad = |message: String| RenderParseError { offset: body_at, message };
        let wires = |s: &str| parse_wires(s).map_err(&bad);
        let one_wire = |s: &str| match parse_wires(s).map_err(&bad)?.as_slice() {
            [w] => Ok(*w),
            _ => Err(bad(format!("`{name}` takes exactly one wire"))),
        };
        use MorphismTerm::*;
        Ok(match name {
            "id" => Id(wires(body)?),
            "eps" => Epsilon(one_wire(body)?),
            "eta" => Eta(one_wire(body)?),
            "delta" => Delta(one_wire(body)?),
            "mu" => Mu(one_wire(body)?),
            "iota" => Iota(one_wire(body)?),
            "zeta" => Zeta(one_wire(body)?),
            "swap" => match wires(body)?.as_slice() {
                [a, b] => Swap(*a, *b),
                _ => return Err(bad("`swap` takes exactly two wires".into())),
            },
            "state" => {
                let (word, ws) =
                    body.rsplit_once(':').ok_or_else(|| bad("expected `word:wires`".into()))?;
                if word.is_empty() {
                    return Err(bad("empty word".into()));
                }
                WordState { word: word.to_string(), wires: wires(ws)? }
            }
            "det" if !body.is_empty() => DetBox(DetRef::Lexical(body.to_string())),
            "gq" => DetBox(DetRef::Builtin(body.parse().map_err(|e| bad(format!("{e}")))?)),
            _ => {
                return Err(RenderParseError {
                    offset: start,
                    message: format!("unknown generator `{name}`"),
                });
            }
        })
    }
}

fn parse_wires(s: &str) -> Result<Vec<WireType>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|w| match w.trim() {
            "W" => Ok(WireType::W),
            "S" => Ok(WireType::S),
            other => Err(format!("unknown wire `{other}`")),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantifiers::Quantifier;
    use WireType::{S, W};
    use proptest::prelude::*;

    #[test]
    fn notation() {
        assert_eq!(render(&MorphismTerm::id(&[W])), "id[W]");
        assert_eq!(
            render(&MorphismTerm::Epsilon(W).tensor(MorphismTerm::id(&[S]))),
            "(eps[W] (x) id[S])"
        );
        assert_eq!(render(&MorphismTerm::word("cats", &[W, S])), "state[cats:W,S]");
        assert_eq!(render(&MorphismTerm::id(&[])), "id[]");
        assert_eq!(
            render(&MorphismTerm::DetBox(DetRef::Builtin(Quantifier::ExactlyN(2)))),
            "gq[exactly:2]"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(parse_term("foo[W]").is_err());
        assert!(parse_term("(id[W] id[W])").is_err());
        assert!(parse_term("eps[W,W]").is_err());
        assert!(parse_term("id[X]").is_err());
        assert!(parse_term("id[W] junk").is_err());
        assert!(parse_term("gq[lots]").is_err());
    }

    #[test]
    fn whitespace_is_tolerated() {
        let t = parse_term("  ( eps[W]   (x)  id[ S ] ) ").unwrap();
        assert_eq!(t, MorphismTerm::Epsilon(W).tensor(MorphismTerm::id(&[S])));
    }

    fn wire() -> impl Strategy<Value = WireType> {
        prop_oneof![Just(W), Just(S)]
    }

    fn arb_term() -> impl Strategy<Value = MorphismTerm> {
        let quant = prop_oneof![
            Just(Quantifier::Some),
            Just(Quantifier::Most),
            (0u32..4).prop_map(Quantifier::Few),
            (0u32..4).prop_map(Quantifier::ExactlyN),
        ];
        let leaf = prop_oneof![
            ("[a-z][a-z:_']{0,6}", prop::collection::vec(wire(), 0..4))
                .prop_map(|(word, wires)| MorphismTerm::WordState { word, wires }),
            wire().prop_map(MorphismTerm::Epsilon),
            wire().prop_map(MorphismTerm::Eta),
            Just(MorphismTerm::Delta(W)),
            Just(MorphismTerm::Mu(W)),
            Just(MorphismTerm::Iota(W)),
            Just(MorphismTerm::Zeta(W)),
            prop::collection::vec(wire(), 0..4).prop_map(MorphismTerm::Id),
            (wire(), wire()).prop_map(|(a, b)| MorphismTerm::Swap(a, b)),
            "[a-z]{1,6}".prop_map(|w| MorphismTerm::DetBox(DetRef::Lexical(w))),
            quant.prop_map(|q| MorphismTerm::DetBox(DetRef::Builtin(q))),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| l.tensor(r)),
                (inner.clone(), inner).prop_map(|(a, b)| a.after(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip(t in arb_term()) {
            let text = render(&t);
            prop_assert_eq!(parse_term(&text).unwrap(), t);
        }
    }
}
