use std::fmt;

use super::SourceSpan;

/// A value with the span it was parsed from. Equality ignores the span.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub value: T,
    pub span: SourceSpan,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

impl<T> Spanned<T> {
    pub fn new(value: T, span: SourceSpan) -> Self {
        Spanned { value, span }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strand {
    E,
    F,
}

impl Strand {
    pub fn letter(self) -> char {
        match self {
            Strand::E => 'E',
            Strand::F => 'F',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    IdE,
    IdF,
    DotE,
    DotF,
    CrossEE,
    CrossFF,
    CupFE,
    CupEF,
    CapFE,
    CapEF,
}

impl Token {
    pub const ALL: [Token; 10] = [
        Token::IdE,
        Token::IdF,
        Token::DotE,
        Token::DotF,
        Token::CrossEE,
        Token::CrossFF,
        Token::CupFE,
        Token::CupEF,
        Token::CapFE,
        Token::CapEF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Token::IdE => "id_e",
            Token::IdF => "id_f",
            Token::DotE => "dot_e",
            Token::DotF => "dot_f",
            Token::CrossEE => "cross_ee",
            Token::CrossFF => "cross_ff",
            Token::CupFE => "cup_fe",
            Token::CupEF => "cup_ef",
            Token::CapFE => "cap_fe",
            Token::CapEF => "cap_ef",
        }
    }

    pub fn from_name(s: &str) -> Option<Token> {
        Token::ALL.into_iter().find(|t| t.name() == s)
    }

    /// Strands consumed, in diagram order.
    pub fn inputs(self) -> &'static [Strand] {
        use Strand::*;
        match self {
            Token::IdE | Token::DotE => &[E],
            Token::IdF | Token::DotF => &[F],
            Token::CrossEE => &[E, E],
            Token::CrossFF => &[F, F],
            Token::CupFE | Token::CupEF => &[],
            Token::CapFE => &[F, E],
            Token::CapEF => &[E, F],
        }
    }

    /// Strands produced, in diagram order.
    pub fn outputs(self) -> &'static [Strand] {
        use Strand::*;
        match self {
            Token::CupFE => &[F, E],
            Token::CupEF => &[E, F],
            Token::CapFE | Token::CapEF => &[],
            other => other.inputs(),
        }
    }

    pub fn family(self) -> &'static str {
        match self {
            Token::IdE | Token::IdF => "identity",
            Token::DotE | Token::DotF => "dot",
            Token::CrossEE | Token::CrossFF => "crossing",
            Token::CupFE | Token::CupEF => "cup",
            Token::CapFE | Token::CapEF => "cap",
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAst {
    pub n_total: Spanned<i64>,
    pub weight: Spanned<i64>,
    pub domain: Spanned<Vec<Strand>>,
    pub layers: Vec<Spanned<Vec<Spanned<Token>>>>,
}

impl DiagramAst {
    /// The word after applying every layer.
    pub fn codomain(&self) -> Vec<Strand> {
        match self.layers.last() {
            Some(layer) => layer.value.iter().flat_map(|t| t.value.outputs().iter().copied()).collect(),
            None => self.domain.value.clone(),
        }
    }
}

pub(crate) fn word_text(word: &[Strand]) -> String {
    if word.is_empty() {
        "1".into()
    } else {
        word.iter().map(|s| s.letter().to_string()).collect::<Vec<_>>().join(" ")
    }
}
