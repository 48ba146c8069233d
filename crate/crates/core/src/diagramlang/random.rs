use rand::Rng;

use super::{DiagramAst, SourceSpan, Spanned, Strand, Token};

/// A random well-typed diagram with at most `max_layers` layers and words of at
/// most `max_width` strands.
pub fn random_diagram<R: Rng>(rng: &mut R, max_n: i64, max_layers: usize, max_width: usize) -> DiagramAst {
    let n_total = rng.gen_range(1..=max_n.max(1));
    let k = rng.gen_range(0..=n_total);
    let weight = 2 * k - n_total;
    let width = rng.gen_range(0..=max_width.min(3));
    let domain: Vec<Strand> = (0..width).map(|_| if rng.gen_bool(0.5) { Strand::E } else { Strand::F }).collect();
    let span = SourceSpan::default();
    let mut word = domain.clone();
    let mut layers = Vec::new();
    for _ in 0..rng.gen_range(0..=max_layers) {
        let mut tokens = Vec::new();
        let mut next = Vec::new();
        let mut i = 0;
        loop {
            if next.len() + 2 <= max_width && rng.gen_bool(0.15) {
                let t = if rng.gen_bool(0.5) { Token::CupFE } else { Token::CupEF };
                next.extend_from_slice(t.outputs());
                tokens.push(Spanned::new(t, span));
                continue;
            }
            if i >= word.len() {
                break;
            }
            let mut options: Vec<Token> = match word[i] {
                Strand::E => vec![Token::IdE, Token::DotE],
                Strand::F => vec![Token::IdF, Token::DotF],
            };
            if let Some(&second) = word.get(i + 1) {
                match (word[i], second) {
                    (Strand::E, Strand::E) => options.push(Token::CrossEE),
                    (Strand::F, Strand::F) => options.push(Token::CrossFF),
                    (Strand::F, Strand::E) => options.push(Token::CapFE),
                    (Strand::E, Strand::F) => options.push(Token::CapEF),
                }
            }
            let t = options[rng.gen_range(0..options.len())];
            i += t.inputs().len();
            next.extend_from_slice(t.outputs());
            tokens.push(Spanned::new(t, span));
        }
        word = next;
        layers.push(Spanned::new(tokens, span));
    }
    DiagramAst {
        n_total: Spanned::new(n_total, span),
        weight: Spanned::new(weight, span),
        domain: Spanned::new(domain, span),
        layers,
    }
}
