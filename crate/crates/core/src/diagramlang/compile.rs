use super::{DiagramAst, DslError, DslErrorKind, Token};
use crate::bimodules::{FlagPath, ShiftConvention};
use crate::twomorphisms::{compile_word, BimMap, Generator, GeneratorKind, SignedWord, Turn};

#[derive(Clone, Debug)]
pub struct CompiledDiagram {
    pub map: BimMap,
    /// Sum of the generator degrees.
    pub table_degree: i64,
    pub warnings: Vec<String>,
}

fn generator_kind(t: Token) -> Option<GeneratorKind> {
    Some(match t {
        Token::IdE | Token::IdF => return None,
        Token::DotE => GeneratorKind::Dot { up: true },
        Token::DotF => GeneratorKind::Dot { up: false },
        Token::CrossEE => GeneratorKind::Crossing { up: true },
        Token::CrossFF => GeneratorKind::Crossing { up: false },
        Token::CupFE => GeneratorKind::Cup(Turn::FE),
        Token::CupEF => GeneratorKind::Cup(Turn::EF),
        Token::CapFE => GeneratorKind::Cap(Turn::FE),
        Token::CapEF => GeneratorKind::Cap(Turn::EF),
    })
}

/// Compiles a checked diagram into the composite of its whiskered generators.
///
/// Inside a layer the tokens are applied right to left; a token's strands start
/// at the path factor equal to the number of strands already produced to its right.
pub fn compile_diagram(ast: &DiagramAst) -> Result<CompiledDiagram, DslError> {
    let n_total = ast.n_total.value as u32;
    let letters: String = ast.domain.value.iter().map(|s| s.letter()).collect();
    let err = |span, e: &dyn std::fmt::Display| DslError::new(DslErrorKind::Compile, span, e.to_string());
    let domain = compile_word(&SignedWord::new(&letters, ast.weight.value), n_total, ShiftConvention::default())
        .map_err(|e| err(ast.weight.span, &e))?;
    let mut warnings = Vec::new();
    if domain.is_zero() {
        warnings.push(format!("domain {} at weight {} is the zero bimodule", letters, ast.weight.value));
    }
    let mut current: FlagPath = domain.clone();
    let mut maps = vec![BimMap::identity(domain)];
    let mut table_degree = 0;
    for layer in &ast.layers {
        let mut produced = 0usize;
        for t in layer.value.iter().rev() {
            let Some(kind) = generator_kind(t.value) else {
                produced += 1;
                continue;
            };
            let k = current.rings()[produced];
            let g = Generator::new(kind, n_total, k);
            let placed = BimMap::place(g, &current, produced).map_err(|e| err(t.span, &e))?;
            table_degree += g.declared_degree();
            current = placed.codomain().clone();
            maps.push(placed);
            produced += t.value.outputs().len();
        }
    }
    let map = BimMap::compose_all(&maps).map_err(|e| err(ast.weight.span, &e))?;
    if !warnings.is_empty() {
        let (d, c) = (map.domain().clone(), map.codomain().clone());
        return Ok(CompiledDiagram { map: BimMap::zero(d, c, table_degree), table_degree, warnings });
    }
    Ok(CompiledDiagram { map, table_degree, warnings })
}
