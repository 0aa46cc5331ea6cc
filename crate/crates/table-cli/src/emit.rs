//! Text, JSON and LaTeX renderings of a [`SpinorTable`].

use std::fmt::Write;
use std::str::FromStr;

use ga_core::Blade;

use crate::table::{mv_of, Named, SpinorTable, TableMode};
use crate::TableError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format {s:?}; use text, json or latex")),
        }
    }
}

pub fn render(table: &SpinorTable, format: Format) -> Result<String, TableError> {
    match format {
        Format::Text => text(table),
        Format::Json => Ok(serde_json::to_string_pretty(table).expect("tables serialize")),
        Format::Latex => latex(table),
    }
}

fn blade_name(idx: &[usize]) -> Result<String, TableError> {
    Ok(Blade::from_indices(idx)?.to_string())
}

fn named_lines(table: &SpinorTable, items: &[Named], wrap: bool) -> Result<Vec<(String, String)>, TableError> {
    let sig = table.sig()?;
    let p = table.idempotent_name();
    items
        .iter()
        .map(|n| {
            let b = blade_name(&n.name)?;
            let label = match (wrap, b.as_str()) {
                (true, _) => format!("{p} {b} {p}"),
                (false, "1") => p.to_string(),
                (false, _) => format!("{b}{p}"),
            };
            Ok((label, mv_of(sig, &n.value)?.to_string()))
        })
        .collect()
}

/// Plain rows `label: content`, shared by the text and LaTeX layouts.
fn rows(table: &SpinorTable) -> Result<Vec<(String, Vec<String>)>, TableError> {
    let sig = table.sig()?;
    let p = table.idempotent_name();
    let it = &table.items;
    let mut out = Vec::new();
    out.push(("1".to_string(), vec![format!("{p} = {}", table.idempotent_mv()?)]));

    let mut r2 = vec![format!("K = {}{}", it.ring.kind, if it.ring.split { " (split)" } else { "" })];
    match table.mode {
        TableMode::Real => {
            r2.extend(named_lines(table, &it.ring.elements, true)?.into_iter().map(|(l, v)| format!("{l} = {v}")));
        }
        TableMode::Complex => {
            for (l, e) in it.ring.labels.iter().zip(&it.ring.elements) {
                let l = if l == "1" { p } else { l.as_str() };
                r2.push(format!("{l} = {}", mv_of(sig, &e.value)?));
            }
        }
    }
    out.push(("2".into(), r2));

    let mut r3: Vec<String> =
        named_lines(table, &it.basis.generators, false)?.into_iter().map(|(l, v)| format!("{l} = {v}")).collect();
    if let Some(second) = &it.basis.second_block {
        for t in second {
            r3.push(format!("second block: {}", mv_of(sig, t)?));
        }
    }
    out.push(("3".into(), r3));

    out.push(("4".into(), it.generators.iter().map(|m| format!("e{} -> {}", m.generator, m.text)).collect()));
    out.push(("5".into(), vec![format!("Ψ = {}", it.spinor.text)]));
    out.push(("6".into(), vec![format!("Ψ̂ = {}", it.spinor_matrix.text)]));
    out.push(("7".into(), vec![it.norm.text.clone()]));
    Ok(out)
}

fn title(table: &SpinorTable) -> String {
    let mode = match table.mode {
        TableMode::Real => "real",
        TableMode::Complex => "complex",
    };
    format!("Cl({},{}) {mode}: {}", table.signature[0], table.signature[1], table.classification)
}

fn text(table: &SpinorTable) -> Result<String, TableError> {
    let mut s = title(table);
    s.push('\n');
    for (label, lines) in rows(table)? {
        for (i, l) in lines.iter().enumerate() {
            let head = if i == 0 { format!("{label}.") } else { String::new() };
            let _ = writeln!(s, "{head:<3} {l}");
        }
    }
    Ok(s)
}

/// Converts the plain notation to LaTeX, e.g. `e23` to `\e{23}`, `E21` to `E_{21}`.
pub fn latexify(src: &str) -> String {
    let chars: Vec<char> = src.replace("Ψ̂", "\u{1}").chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let prev_alpha = i > 0 && chars[i - 1].is_ascii_alphabetic();
        let next_digit = chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        let next_brace = chars.get(i + 1) == Some(&'{');
        if !prev_alpha && (next_digit || next_brace) && matches!(c, 'e' | 'E' | 's' | 'q' | 'P') {
            let mut j = i + 1;
            let sub: String = if next_brace {
                while j < chars.len() && chars[j] != '}' {
                    j += 1;
                }
                j += 1;
                chars[i + 2..j - 1].iter().collect()
            } else {
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                chars[i + 1..j].iter().collect()
            };
            match c {
                'e' => {
                    let _ = write!(out, "\\e{{{sub}}}");
                }
                _ => {
                    let _ = write!(out, "{c}_{{{sub}}}");
                }
            }
            i = j;
            continue;
        }
        match c {
            'Ψ' => out.push_str("\\Psi "),
            '\u{1}' => out.push_str("\\hat{\\Psi} "),
            '²' => out.push_str("^2"),
            '⊕' => out.push_str("\\oplus "),
            '|' => out.push('|'),
            '<' => out.push_str("\\langle "),
            '>' if i > 0 && chars[i - 1] == '-' => {
                out.pop();
                out.push_str("\\mapsto ");
            }
            '>' => out.push_str("\\rangle "),
            '*' => out.push_str("^{*}"),
            _ => out.push(c),
        }
        i += 1;
    }
    out.replace("rev(", "\\reverse(").replace("gi(", "\\gradeinverse(").replace("cc(", "\\cliffordconj(")
}

fn latex(table: &SpinorTable) -> Result<String, TableError> {
    let mut s = String::new();
    let _ = writeln!(s, "% macros used: \\e, \\reverse, \\gradeinverse, \\cliffordconj");
    let _ = writeln!(s, "\\begin{{tabular}}{{rl}}");
    let _ = writeln!(s, "\\multicolumn{{2}}{{l}}{{${}$}} \\\\", latexify(&title(table)));
    for (label, lines) in rows(table)? {
        for (i, l) in lines.iter().enumerate() {
            let head = if i == 0 { format!("{label}.") } else { String::new() };
            let _ = writeln!(s, "{head} & ${}$ \\\\", latexify(l));
        }
    }
    let _ = writeln!(s, "\\end{{tabular}}");
    Ok(s)
}
