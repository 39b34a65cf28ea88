//! Special-case rows for small levels, compared against the printed table.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{main_relation, Origin, Relation};
use crate::divisor::render_terms;
use crate::{BasisContext, DivisorClass, Error, GeneratorId, Result};

/// One printed row, stored verbatim as `lhs = rhs` in LaTeX.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrintedRow {
    pub r: u64,
    pub s: u64,
    pub latex: &'static str,
}

const PRINTED: &[PrintedRow] = &[
    PrintedRow {
        r: 2,
        s: 2,
        latex: r"4\lambda + 8 \mu^{1/2} = \gamma_0",
    },
    PrintedRow {
        r: 3,
        s: 3,
        latex: r"6\lambda + 18 \mu^{1/3} = 2 \gamma_0 + 2 \sigma_2",
    },
    PrintedRow {
        r: 4,
        s: 4,
        latex: r"4\lambda + 32 \mu^{1/4} = 3 \gamma_{0} - 2\gamma_{2}",
    },
    PrintedRow {
        r: 4,
        s: 2,
        latex: r"4\lambda + 8 \mu^{1/2} = \gamma_{0} + 2 \gamma_{2}",
    },
    PrintedRow {
        r: 5,
        s: 5,
        latex: r"2\lambda - 50 \mu^{1/5} = -4 \gamma_0 + 10 (\gamma_2 + \sigma_2 + \sigma_4) - 4 \sigma_3",
    },
    PrintedRow {
        r: 6,
        s: 6,
        latex: r"12\lambda - 72 \mu^{1/6} = -5 \gamma_{0} + 9 \gamma_{2} + 8 (\gamma_{3} + \sigma_{2} + \sigma_{5})",
    },
    PrintedRow {
        r: 6,
        s: 2,
        latex: r"4\lambda + 8 \mu^{1/2} = \gamma_{0} + 3\gamma_{2}",
    },
    PrintedRow {
        r: 6,
        s: 3,
        latex: r"6\lambda + 18\mu^{1/3} = 2 \gamma_0 +4 \gamma_3 + 4(\sigma_2+\sigma_5)",
    },
    PrintedRow {
        r: 7,
        s: 7,
        latex: r"26 \lambda -98 \mu^{1/7} = -6(\gamma_0+\sigma_4) + 28 (\gamma_2 + \sigma_3 + \sigma_5) + 42(\gamma_3 + \sigma_2 + \sigma_6)",
    },
    PrintedRow {
        r: 8,
        s: 8,
        latex: r"44 \lambda - 128 \mu^{1/8} = -7\gamma_0 + 20 \gamma_2 + 18 \gamma_4 + 64(\gamma_3+\sigma_2+\sigma_3+\sigma_6+\sigma_7)",
    },
    PrintedRow {
        r: 8,
        s: 4,
        latex: r"4 \lambda-32\mu^{1/4} = 3 \gamma_0 + 6 \gamma_4 - 4 \gamma_2",
    },
    PrintedRow {
        r: 8,
        s: 2,
        latex: r"4 \lambda -8\mu^{1/2} = \gamma_0 +4\gamma_2+2 \gamma_4",
    },
];

/// Printed rows for level `r`, in printed order.
pub fn printed_rows(r: u64) -> Vec<PrintedRow> {
    PRINTED.iter().filter(|p| p.r == r).copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientMismatch {
    #[serde(with = "crate::serde_int")]
    pub derived: BigInt,
    pub generator: GeneratorId,
    #[serde(with = "crate::serde_int")]
    pub printed: BigInt,
}

/// A printed row that disagrees with the derived relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub derived_latex: String,
    pub description: String,
    pub mismatches: Vec<CoefficientMismatch>,
    pub printed_latex: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub derived: Relation,
    pub derived_latex: String,
    pub derived_text: String,
    pub errata: Option<Erratum>,
    pub printed: Option<Relation>,
    pub printed_latex: Option<String>,
    pub r: u64,
    pub s: u64,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: BasisContext,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::usage(format!(
            "cannot parse printed row at byte {}: {what} in {:?}",
            self.pos, self.src
        ))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        rest[..len].parse().ok()
    }

    fn subscript(&mut self) -> Result<u64> {
        if !self.eat("_") {
            return Err(self.err("expected subscript"));
        }
        let braced = self.eat("{");
        let n = self.number().ok_or_else(|| self.err("expected index"))?;
        if braced && !self.eat("}") {
            return Err(self.err("unclosed subscript"));
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<DivisorClass> {
        let gen = if self.eat(r"\lambda") {
            GeneratorId::Lambda
        } else if self.eat(r"\mu^{1/") {
            let s = self.number().ok_or_else(|| self.err("expected μ level"))?;
            if !self.eat("}") {
                return Err(self.err("unclosed μ superscript"));
            }
            self.ctx.mu(s)?
        } else if self.eat(r"\gamma") {
            GeneratorId::Gamma(self.subscript()?)
        } else if self.eat(r"\sigma") {
            GeneratorId::AlphaResidue(self.subscript()? % self.ctx.level)
        } else {
            return Err(self.err("unknown symbol"));
        };
        DivisorClass::generator(self.ctx, gen)
    }

    fn term(&mut self) -> Result<DivisorClass> {
        let k = self.number().unwrap_or(1);
        let body = if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.err("unbalanced parenthesis"));
            }
            inner
        } else {
            self.atom()?
        };
        Ok(body.scaled(k))
    }

    fn expr(&mut self) -> Result<DivisorClass> {
        let mut out = DivisorClass::zero(self.ctx);
        let mut sign = if self.eat("-") {
            -1
        } else {
            self.eat("+");
            1
        };
        loop {
            out.add_scaled(&self.term()?, sign)?;
            match self.peek() {
                Some('+') => {
                    self.eat("+");
                    sign = 1;
                }
                Some('-') => {
                    self.eat("-");
                    sign = -1;
                }
                _ => return Ok(out),
            }
        }
    }
}

/// Parses `lhs = rhs` into the generic-genus class `lhs - rhs` at level `r`.
pub fn parse_printed_row(r: u64, latex: &str) -> Result<DivisorClass> {
    let ctx = BasisContext::generic(r)?;
    let (lhs, rhs) = latex
        .split_once('=')
        .ok_or_else(|| Error::usage(format!("no '=' in {latex:?}")))?;
    let side = |src: &str| -> Result<DivisorClass> {
        let mut p = Parser { src, pos: 0, ctx };
        let c = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(c)
    };
    DivisorClass::combine(&side(lhs)?, &side(rhs)?, 1, -1)
}

fn boundary_rank(g: &GeneratorId) -> (u8, GeneratorId) {
    (
        if matches!(g, GeneratorId::Gamma(_)) {
            0
        } else {
            1
        },
        *g,
    )
}

/// Renders a relation as `open part = boundary part`, with a positive leading
/// open coefficient and `γ` terms before `σ`/`α` terms on the right.
pub fn render_equation(class: &DivisorClass, name: impl Fn(&GeneratorId) -> String) -> String {
    let lead = class
        .terms()
        .find(|(g, _)| !g.is_boundary())
        .map(|(_, c)| c.clone());
    let sign = if lead.is_some_and(|c| c.is_negative()) {
        -1
    } else {
        1
    };
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (g, c) in class.terms() {
        if g.is_boundary() {
            rhs.push((*g, -c * sign));
        } else {
            lhs.push((*g, c * sign));
        }
    }
    rhs.sort_by_key(|(g, _)| boundary_rank(g));
    let side =
        |v: Vec<(GeneratorId, BigInt)>| render_terms(v.into_iter().map(|(g, c)| (name(&g), c)));
    format!("{} = {}", side(lhs), side(rhs))
}

fn compare(
    r: u64,
    s: u64,
    derived: &DivisorClass,
    printed: &DivisorClass,
    printed_latex: &str,
) -> Option<Erratum> {
    if derived == printed {
        return None;
    }
    let mut gens: Vec<GeneratorId> = derived
        .terms()
        .chain(printed.terms())
        .map(|(g, _)| *g)
        .collect();
    gens.sort();
    gens.dedup();
    let mismatches: Vec<CoefficientMismatch> = gens
        .into_iter()
        .filter(|g| derived.coefficient(*g) != printed.coefficient(*g))
        .map(|g| CoefficientMismatch {
            derived: derived.coefficient(g),
            generator: g,
            printed: printed.coefficient(g),
        })
        .collect();
    let listing: Vec<String> = mismatches
        .iter()
        .map(|m| {
            format!(
                "{} (printed {}, derived {})",
                m.generator.text(),
                m.printed,
                m.derived
            )
        })
        .collect();
    Some(Erratum {
        derived_latex: render_equation(derived, GeneratorId::latex),
        description: format!(
            "printed row for r={r}, s={s} disagrees with the derived relation in {} coefficient(s): {}",
            mismatches.len(),
            listing.join("; ")
        ),
        mismatches,
        printed_latex: printed_latex.to_string(),
    })
}

/// Derived rows for every `s | r`, `s ≥ 2`, in generic-genus mode, each
/// compared with its printed counterpart where one exists. Rows follow the
/// printed order, then descending `s`.
pub fn corollary_table(r: u64) -> Result<Vec<TableRow>> {
    if r < 2 {
        return Err(Error::usage(format!("table needs r >= 2, got r={r}")));
    }
    let ctx = BasisContext::generic(r)?;
    let printed = printed_rows(r);
    let mut levels: Vec<u64> = printed.iter().map(|p| p.s).collect();
    let rest: Vec<u64> = (2..=r)
        .rev()
        .filter(|s| r.is_multiple_of(*s) && !levels.contains(s))
        .collect();
    levels.extend(rest);
    let mut rows = Vec::new();
    for s in levels {
        let derived = main_relation(&ctx, s)?;
        let stored = printed.iter().find(|p| p.s == s);
        let printed_rel = stored
            .map(|p| parse_printed_row(r, p.latex).map(|c| Relation::new(c, Origin::PrintedTable)))
            .transpose()?;
        let errata = match (stored, &printed_rel) {
            (Some(p), Some(rel)) => compare(r, s, derived.class(), rel.class(), p.latex),
            _ => None,
        };
        rows.push(TableRow {
            derived_latex: render_equation(derived.class(), GeneratorId::latex),
            derived_text: render_equation(derived.class(), GeneratorId::text),
            derived,
            errata,
            printed: printed_rel,
            printed_latex: stored.map(|p| p.latex.to_string()),
            r,
            s,
        });
    }
    Ok(rows)
}

/// LaTeX array in the layout of the printed table. Errata become `%` comments
/// after the affected row.
pub fn table_latex(rows: &[TableRow]) -> String {
    let mut out = String::from("$$\n\\begin{array}{|l|rcl|}\n\\hline\n");
    let mut current = None;
    for row in rows {
        let label = if current == Some(row.r) {
            String::new()
        } else {
            if current.is_some() {
                out.push_str("\\hline\n");
            }
            current = Some(row.r);
            format!("r={}", row.r)
        };
        let (lhs, rhs) = row
            .derived_latex
            .split_once(" = ")
            .unwrap_or((&row.derived_latex, "0"));
        out.push_str(&format!("{label} & {lhs} & = & {rhs} \\\\\n"));
        if let Some(e) = &row.errata {
            out.push_str(&format!(
                "% erratum (r={}, s={}): printed {}\n",
                row.r, row.s, e.printed_latex
            ));
        }
    }
    if current.is_some() {
        out.push_str("\\hline\n");
    }
    out.push_str("\\end{array}\n$$\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use GeneratorId::*;

    #[test]
    fn parses_grouped_terms() {
        let c = parse_printed_row(
            5,
            r"2\lambda - 50 \mu^{1/5} = -4 \gamma_0 + 10 (\gamma_2 + \sigma_2) - \sigma_3",
        )
        .unwrap();
        let want = DivisorClass::from_terms(
            BasisContext::generic(5).unwrap(),
            [
                (Lambda, 2),
                (Mu(5), -50),
                (Gamma(0), 4),
                (Gamma(2), -10),
                (AlphaResidue(2), -10),
                (AlphaResidue(3), 1),
            ],
        )
        .unwrap();
        assert_eq!(c, want);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_printed_row(4, r"4\lambda").is_err());
        assert!(parse_printed_row(4, r"4\lambda = \beta_0").is_err());
        assert!(parse_printed_row(4, r"4\lambda = (\gamma_0").is_err());
        assert!(parse_printed_row(4, r"4\lambda = \gamma_9").is_err());
        assert!(parse_printed_row(4, r"4\mu^{1/3} = \gamma_0").is_err());
    }

    #[test]
    fn rows_up_to_seven_match() {
        for r in 2..=7 {
            for row in corollary_table(r).unwrap() {
                assert!(row.printed.is_some(), "r={r} s={}", row.s);
                assert_eq!(row.errata, None, "r={r} s={}", row.s);
            }
        }
    }

    #[test]
    fn level_eight_errata() {
        let rows = corollary_table(8).unwrap();
        let flagged: Vec<u64> = rows
            .iter()
            .filter(|r| r.errata.is_some())
            .map(|r| r.s)
            .collect();
        assert_eq!(flagged, [4, 2]);
        let e = rows[1].errata.as_ref().unwrap();
        assert_eq!(e.mismatches.len(), 1);
        assert_eq!(e.mismatches[0].generator, Mu(4));
        assert_eq!(rows[1].derived_text, "4λ + 32μ^{1/4} = 3γ_0 - 4γ_2 + 6γ_4");
        assert_eq!(rows[2].derived_text, "4λ + 8μ^{1/2} = γ_0 + 4γ_2 + 2γ_4");
    }

    #[test]
    fn unprinted_levels_have_no_printed_row() {
        let rows = corollary_table(9).unwrap();
        assert_eq!(rows.iter().map(|r| r.s).collect::<Vec<_>>(), [9, 3]);
        assert!(rows
            .iter()
            .all(|r| r.printed.is_none() && r.errata.is_none()));
    }

    #[test]
    fn equation_rendering() {
        let rows = corollary_table(3).unwrap();
        assert_eq!(rows[0].derived_text, "6λ + 18μ^{1/3} = 2γ_0 + 2σ_2");
        let rows = corollary_table(6).unwrap();
        assert_eq!(rows.iter().map(|r| r.s).collect::<Vec<_>>(), [6, 2, 3]);
        assert_eq!(rows[1].derived_text, "4λ + 8μ^{1/2} = γ_0 + 3γ_2");
    }

    #[test]
    fn latex_layout() {
        let tex = table_latex(&corollary_table(4).unwrap());
        assert!(tex.starts_with(
            "$$\n\\begin{array}{|l|rcl|}\n\\hline\nr=4 & 4\\lambda + 32\\mu^{1/4} & = & "
        ));
        assert!(!tex.contains('%'));
        assert!(
            table_latex(&corollary_table(8).unwrap())
                .matches("% erratum")
                .count()
                == 2
        );
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let c = parse_printed_row(4, r"4\lambda = 2\gamma_0 - 2\gamma_0").unwrap();
        assert!(c.coefficient(Gamma(0)).is_zero());
    }
}
