use num_bigint::BigInt;

use super::{DslError, DslErrorKind as K, SourceSpan};
use crate::bimodules::{normalize, BimElement, FlagPath, RawTensor};
use crate::exactpoly::{Polynomial, Rational, VarSymbol};
use crate::grassrings::GrassContext;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Xi,
    LBracket,
    RBracket,
    At,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Bar,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i + 1;
        let single = |t: Tok| (t, SourceSpan::new(1, start, start));
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i..j].iter().collect();
                out.push((Tok::Int(digits.parse().unwrap()), SourceSpan::new(1, start, j)));
                i = j;
                continue;
            }
            'x' if chars.get(i + 1) == Some(&'i') => {
                out.push((Tok::Xi, SourceSpan::new(1, start, start + 1)));
                i += 2;
                continue;
            }
            'x' => out.push(single(Tok::X)),
            'y' => out.push(single(Tok::Y)),
            '[' => out.push(single(Tok::LBracket)),
            ']' => out.push(single(Tok::RBracket)),
            '@' => out.push(single(Tok::At)),
            '+' => out.push(single(Tok::Plus)),
            '-' => out.push(single(Tok::Minus)),
            '*' => out.push(single(Tok::Star)),
            '/' => out.push(single(Tok::Slash)),
            '^' => out.push(single(Tok::Caret)),
            '|' => out.push(single(Tok::Bar)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            other => {
                return Err(DslError::new(K::Lexical, SourceSpan::new(1, start, start), format!("unexpected character {other:?}")))
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Where a factor expression lives: the rings whose generators it may use and
/// the weight that untagged `x[j]` / `y[j]` default to.
#[derive(Clone, Copy, Debug)]
struct Slot {
    x_ring: GrassContext,
    y_ring: GrassContext,
    allow_xi: bool,
}

struct Parser<'a> {
    toks: &'a [(Tok, SourceSpan)],
    pos: usize,
    end: SourceSpan,
}

type Terms = Vec<Vec<Polynomial>>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map(|(_, s)| *s).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<SourceSpan, DslError> {
        match self.bump() {
            Some((t, s)) if t == want => Ok(s),
            Some((t, s)) => Err(DslError::new(K::Lexical, s, format!("expected {what}, found {t:?}"))),
            None => Err(DslError::new(K::Lexical, self.end, format!("expected {what}, found end of input"))),
        }
    }

    fn int(&mut self) -> Result<BigInt, DslError> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some((Tok::Int(v), _)) => Ok(if negative { -v } else { v }),
            Some((t, s)) => Err(DslError::new(K::Lexical, s, format!("expected an integer, found {t:?}"))),
            None => Err(DslError::new(K::Lexical, self.end, "expected an integer, found end of input")),
        }
    }

    /// `sum := term (('+' | '-') term)*`, `term := factor ('|' factor)*`
    fn tensor_sum(&mut self, slots: &[Slot]) -> Result<Terms, DslError> {
        let mut out = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let start = self.span();
            let mut factors = Vec::new();
            loop {
                let slot = slots.get(factors.len()).copied();
                let Some(slot) = slot else {
                    return Err(DslError::new(
                        K::FactorCount,
                        self.span(),
                        format!("expected {} tensor factor{}, found more", slots.len(), if slots.len() == 1 { "" } else { "s" }),
                    ));
                };
                factors.push(self.product(slot)?);
                if self.peek() == Some(&Tok::Bar) {
                    self.bump();
                } else {
                    break;
                }
            }
            if factors.len() != slots.len() {
                return Err(DslError::new(
                    K::FactorCount,
                    start,
                    format!("expected {} tensor factors, found {}", slots.len(), factors.len()),
                ));
            }
            if negate {
                factors[0] = -&factors[0];
            }
            out.push(factors);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                None => return Ok(out),
                Some(t) => {
                    return Err(DslError::new(K::Lexical, self.span(), format!("unexpected {t:?}")));
                }
            }
        }
    }

    /// A full polynomial inside parentheses.
    fn poly_sum(&mut self, slot: Slot) -> Result<Polynomial, DslError> {
        let mut acc = Polynomial::zero();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let p = self.product(slot)?;
            if negate {
                acc -= &p;
            } else {
                acc += &p;
            }
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn product(&mut self, slot: Slot) -> Result<Polynomial, DslError> {
        let mut acc = self.unary(slot)?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = &acc * &self.unary(slot)?;
        }
        Ok(acc)
    }

    fn unary(&mut self, slot: Slot) -> Result<Polynomial, DslError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.unary(slot)?);
        }
        let base = self.atom(slot)?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let s = self.span();
            let e = self.int()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| DslError::new(K::Lexical, s, "exponents must be non-negative integers"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, slot: Slot) -> Result<Polynomial, DslError> {
        let span = self.span();
        match self.bump() {
            Some((Tok::Int(p), _)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let qs = self.span();
                    let q = self.int()?;
                    if q == BigInt::from(0) {
                        return Err(DslError::new(K::Lexical, qs, "zero denominator"));
                    }
                    return Ok(Polynomial::constant(Rational::new(p, q)));
                }
                Ok(Polynomial::constant(Rational::from_integer(p)))
            }
            Some((Tok::Xi, s)) => {
                if !slot.allow_xi {
                    return Err(DslError::new(K::Generator, s, "xi is not available in a ring without tensor factors"));
                }
                Ok(Polynomial::var(VarSymbol::xi(1)))
            }
            Some((Tok::X, _)) | Some((Tok::Y, _)) => {
                let is_x = self.toks[self.pos - 1].0 == Tok::X;
                self.expect(Tok::LBracket, "'['")?;
                let j = self.int()?;
                let close = self.expect(Tok::RBracket, "']'")?;
                let mut ring = if is_x { slot.x_ring } else { slot.y_ring };
                let mut end = close;
                if self.peek() == Some(&Tok::At) {
                    self.bump();
                    let ws = self.span();
                    let w = self.int()?;
                    end = ws;
                    let w: i64 = (&w).try_into().unwrap_or(i64::MAX);
                    ring = [slot.x_ring, slot.y_ring]
                        .into_iter()
                        .find(|c| c.weight() as i64 == w)
                        .ok_or_else(|| {
                            DslError::new(K::Generator, ws, format!("weight {w} is not a ring of this factor"))
                        })?;
                }
                let full = SourceSpan::new(span.line, span.col_start, end.col_end);
                let j: u32 = (&j).try_into().unwrap_or(0);
                let sym = if is_x { VarSymbol::x(j, ring.weight()) } else { VarSymbol::y(j, ring.weight()) };
                if !ring.owns(&sym) {
                    return Err(DslError::new(
                        K::Generator,
                        full,
                        format!("unknown generator {sym} for this factor (ring H_{} at N = {})", ring.k(), ring.n_total()),
                    ));
                }
                Ok(Polynomial::var(sym))
            }
            Some((Tok::LParen, _)) => {
                let p = self.poly_sum(slot)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            Some((t, s)) => Err(DslError::new(K::Lexical, s, format!("unexpected {t:?}"))),
            None => Err(DslError::new(K::Lexical, self.end, "unexpected end of input")),
        }
    }
}

fn end_span(text: &str) -> SourceSpan {
    let n = text.chars().count() + 1;
    SourceSpan::new(1, n, n)
}

/// Parses an element expression over `path` and normalizes it.
///
/// Factors are written in diagram order (the last path factor first). Untagged
/// `x[j]` refers to the lower ring of a factor and `y[j]` to the upper ring;
/// `@n` selects a ring by weight.
pub fn parse_element(text: &str, path: &FlagPath) -> Result<BimElement, DslError> {
    if path.is_zero() {
        return Ok(BimElement::zero(path.clone()));
    }
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(DslError::new(K::Lexical, end_span(text), "empty element"));
    }
    let slots: Vec<Slot> = if path.is_empty() {
        let c = path.source_ctx().expect("nonzero path");
        vec![Slot { x_ring: c, y_ring: c, allow_xi: false }]
    } else {
        path.steps()
            .into_iter()
            .rev()
            .map(|st| Slot { x_ring: st.lower_ctx(), y_ring: st.upper_ctx(), allow_xi: true })
            .collect()
    };
    let mut parser = Parser { toks: &toks, pos: 0, end: end_span(text) };
    let terms = parser.tensor_sum(&slots)?;
    let mut out = BimElement::zero(path.clone());
    let wrap = |e: crate::bimodules::BimError| DslError::new(K::Generator, SourceSpan::new(1, 1, 1), e.to_string());
    for mut factors in terms {
        let raw = if path.is_empty() {
            RawTensor::new(path.clone(), vec![]).map_err(wrap)?.with_coefficient(factors.remove(0))
        } else {
            factors.reverse();
            RawTensor::new(path.clone(), factors).map_err(wrap)?
        };
        out = out.add(&normalize(&raw).map_err(wrap)?).map_err(wrap)?;
    }
    Ok(out)
}

/// Parses a polynomial in the generators of `ctx` (tags optional).
pub fn parse_polynomial(text: &str, ctx: GrassContext) -> Result<Polynomial, DslError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks: &toks, pos: 0, end: end_span(text) };
    let slot = Slot { x_ring: ctx, y_ring: ctx, allow_xi: false };
    let p = parser.poly_sum(slot)?;
    if parser.pos < toks.len() {
        return Err(DslError::new(K::Lexical, parser.span(), "unexpected trailing input"));
    }
    Ok(p)
}
