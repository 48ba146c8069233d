use super::ast::word_text;
use super::{DiagramAst, DslError, DslErrorKind as K, SourceSpan, Spanned, Strand, Token};

/// Whitespace-separated words of a line with their one-based column ranges.
fn words(line: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices().chain([(line.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, i, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_int(text: &str, span: SourceSpan, what: &str) -> Result<i64, DslError> {
    text.parse::<i64>()
        .map_err(|_| DslError::new(K::Lexical, span, format!("expected an integer for {what}, found '{text}'")))
}

fn strands_text(word: &[Strand]) -> String {
    format!("{} strand{} ({})", word.len(), if word.len() == 1 { "" } else { "s" }, word_text(word))
}

/// Parses and type-checks a diagram. Layers are listed bottom first.
pub fn parse_diagram(text: &str) -> Result<DiagramAst, DslError> {
    let mut n_total: Option<Spanned<i64>> = None;
    let mut weight: Option<Spanned<i64>> = None;
    let mut domain: Option<Spanned<Vec<Strand>>> = None;
    let mut layers: Vec<Spanned<Vec<Spanned<Token>>>> = Vec::new();
    let mut current: Vec<Strand> = Vec::new();

    for (line_no, raw_line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some(c) = line.chars().find(|c| !c.is_ascii() || c.is_ascii_control() && *c != '\t') {
            let col = line.find(c).unwrap() + 1;
            return Err(DslError::new(K::Lexical, SourceSpan::new(line_no, col, col), format!("unexpected character {c:?}")));
        }
        let line_span = SourceSpan::new(line_no, 1, line.trim_end().len());
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("layer:") {
            let Some(dom) = &domain else {
                return Err(DslError::new(K::Header, line_span, "layer before the domain header"));
            };
            if layers.is_empty() {
                current = dom.value.clone();
            }
            let offset = line.len() - rest.len();
            let mut tokens = Vec::new();
            for (a, b, w) in words(rest) {
                let span = SourceSpan::new(line_no, a + offset, b + offset);
                let tok = Token::from_name(w)
                    .ok_or_else(|| DslError::new(K::UnknownToken, span, format!("unknown token '{w}'")))?;
                tokens.push(Spanned::new(tok, span));
            }
            current = check_layer(&current, &tokens, line_span)?;
            layers.push(Spanned::new(tokens, line_span));
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            let (a, b, w) = words(line)[0];
            return Err(DslError::new(K::UnknownToken, SourceSpan::new(line_no, a, b), format!("unknown line starting with '{w}'")));
        };
        let key = key.trim();
        let value_offset = line.find('=').unwrap() + 1;
        let value_words = words(value);
        let value_span = match (value_words.first(), value_words.last()) {
            (Some(first), Some(last)) => SourceSpan::new(line_no, first.0 + value_offset, last.1 + value_offset),
            _ => return Err(DslError::new(K::Header, line_span, format!("missing value for '{key}'"))),
        };
        if !layers.is_empty() {
            return Err(DslError::new(K::Header, line_span, format!("header '{key}' after the first layer")));
        }
        match key {
            "N" => {
                let v = parse_int(value.trim(), value_span, "N")?;
                if v < 1 {
                    return Err(DslError::new(K::Header, value_span, format!("N must be positive, found {v}")));
                }
                n_total = Some(Spanned::new(v, value_span));
            }
            "weight" => weight = Some(Spanned::new(parse_int(value.trim(), value_span, "weight")?, value_span)),
            "domain" => {
                let mut word = Vec::new();
                if !(value_words.len() == 1 && value_words[0].2 == "1") {
                    for (a, b, w) in &value_words {
                        let span = SourceSpan::new(line_no, a + value_offset, b + value_offset);
                        for c in w.chars() {
                            word.push(match c {
                                'E' => Strand::E,
                                'F' => Strand::F,
                                _ => {
                                    return Err(DslError::new(K::Lexical, span, format!("expected E, F or 1 in the domain, found '{w}'")))
                                }
                            });
                        }
                    }
                }
                domain = Some(Spanned::new(word, value_span));
            }
            other => {
                return Err(DslError::new(K::Header, line_span, format!("unknown header '{other}'")));
            }
        }
    }
    let missing = |what: &str| DslError::new(K::Header, SourceSpan::new(1, 1, 1), format!("missing header '{what}'"));
    let n_total = n_total.ok_or_else(|| missing("N"))?;
    let weight = weight.ok_or_else(|| missing("weight"))?;
    let domain = domain.ok_or_else(|| missing("domain"))?;
    if (weight.value + n_total.value).rem_euclid(2) != 0 {
        return Err(DslError::new(
            K::Header,
            weight.span,
            format!("weight {} has the wrong parity for N = {}", weight.value, n_total.value),
        ));
    }
    Ok(DiagramAst { n_total, weight, domain, layers })
}

/// Checks one layer against the current word and returns the next word.
fn check_layer(word: &[Strand], tokens: &[Spanned<Token>], line_span: SourceSpan) -> Result<Vec<Strand>, DslError> {
    let mut pos = 0;
    let mut out = Vec::new();
    for t in tokens {
        let need = t.value.inputs();
        let available = &word[pos.min(word.len())..];
        if available.len() < need.len() {
            return Err(DslError::new(
                K::StrandCount,
                t.span,
                format!(
                    "{} consumes {} strand{}, found {}",
                    t.value.family(),
                    need.len(),
                    if need.len() == 1 { "" } else { "s" },
                    available.len()
                ),
            ));
        }
        let got = &available[..need.len()];
        if got != need {
            return Err(DslError::new(
                K::Orientation,
                t.span,
                format!("{} expects {}, found {}", t.value, word_text(need), word_text(got)),
            ));
        }
        pos += need.len();
        out.extend_from_slice(t.value.outputs());
    }
    if pos != word.len() {
        return Err(DslError::new(
            K::StrandCount,
            line_span,
            format!("layer consumes {}, word has {}", strands_text(&word[..pos]), strands_text(word)),
        ));
    }
    Ok(out)
}

/// Canonical text of a diagram; `parse_diagram(render_diagram(d)) == d`.
pub fn render_diagram(ast: &DiagramAst) -> String {
    let mut out = format!(
        "N = {}\nweight = {}\ndomain = {}\n",
        ast.n_total.value,
        ast.weight.value,
        word_text(&ast.domain.value)
    );
    for layer in &ast.layers {
        let names: Vec<&str> = layer.value.iter().map(|t| t.value.name()).collect();
        if names.is_empty() {
            out.push_str("layer:\n");
        } else {
            out.push_str(&format!("layer: {}\n", names.join(" ")));
        }
    }
    out
}
