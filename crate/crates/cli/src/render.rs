use std::fmt::Write;

use spinpic_core::relations::table_latex;
use spinpic_core::{BoundaryKind, BoundaryLabel, DivisorClass, Genus, TorsionCertificate};

use crate::args::Format;
use crate::report::*;

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Text => text(report),
        Format::Latex => latex(report),
    }
}

/// Pretty JSON with keys sorted at every level.
pub fn json(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("reports serialize to JSON");
    let mut out = serde_json::to_string_pretty(&value).expect("JSON values print");
    out.push('\n');
    out
}

fn context_label(r: u64, genus: Genus) -> String {
    match genus {
        Genus::Finite(g) => format!("r={r}, g={g}"),
        Genus::Generic => format!("r={r}, generic genus"),
    }
}

fn relation_lines(out: &mut String, entries: &[RelationEntry]) {
    for e in entries {
        let _ = writeln!(out, "s={}: {}", e.s, e.text);
    }
}

fn label_name(l: &BoundaryLabel) -> String {
    match l.kind {
        BoundaryKind::Alpha(i) => format!("δ_{i}"),
        BoundaryKind::Gamma(j) => format!("γ_{j}"),
    }
}

fn certificate_text(out: &mut String, c: &TorsionCertificate) {
    let _ = writeln!(out, "torsion certificate, r={}, {}", c.r, c.case);
    if let (Some(s), Some(d)) = (c.s, c.d) {
        let _ = writeln!(out, "s={s}, d={d}");
    }
    let _ = writeln!(out, "candidate: ({}) / {}", c.numerator, c.denominator);
    let _ = writeln!(out, "           {}", c.candidate);
    let _ = writeln!(out, "identity: {}", c.identity);
    let _ = writeln!(out, "boundary class: {}", c.boundary_class);
    for w in &c.witnesses {
        let _ = writeln!(
            out,
            "witness: {} coefficient {} ≡ {} mod {}, so {}·candidate ≠ 0",
            w.generator.text(),
            w.coefficient,
            w.residue,
            w.modulus,
            w.nonzero_multiple
        );
    }
    if let Some(p) = &c.printed_constant {
        let _ = writeln!(
            out,
            "λ-constant: derived {} (boundary: {}), printed {} (boundary: {})",
            p.derived, p.derived_yields_boundary_class, p.printed, p.printed_yields_boundary_class
        );
    }
    let _ = writeln!(out, "upper bound: {}", c.upper_bound_order);
    let _ = writeln!(out, "result: {}", c.statement);
}

fn presentation_rows(out: &mut String, p: &spinpic_core::AbelianPresentation) {
    let _ = writeln!(out, "generators: {}", p.generators.join(", "));
    for i in 0..p.relations.rows() {
        let row: Vec<String> = p.relations.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
}

pub fn text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Table(t) => {
            let _ = writeln!(out, "relation table, r={}", t.r);
            for row in &t.rows {
                let status = match (&row.printed, &row.errata) {
                    (_, Some(e)) => format!("erratum: {}", e.description),
                    (Some(_), None) => "matches printed row".into(),
                    (None, None) => "no printed row".into(),
                };
                let _ = writeln!(out, "s={}: {}  [{status}]", row.s, row.derived_text);
            }
            let _ = writeln!(out, "errata: {}", t.errata.len());
        }
        Report::Relation(rel) => {
            let _ = writeln!(
                out,
                "main relations, {}",
                context_label(rel.context.level, rel.context.genus)
            );
            relation_lines(&mut out, &rel.relations);
        }
        Report::Bis(b) => {
            let _ = writeln!(
                out,
                "pulled-back relations, {}",
                context_label(b.context.level, b.context.genus)
            );
            relation_lines(&mut out, &b.relations);
            let _ = writeln!(out, "agrees with main: {}", b.agrees_with_main);
        }
        Report::Derive(d) => {
            let ctx = d.trace.context;
            let _ = writeln!(
                out,
                "derivation, {}, s={}",
                context_label(ctx.level, ctx.genus),
                d.trace.s
            );
            for (i, step) in d.trace.steps.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{}. {} × {:?}: {}",
                    i + 1,
                    step.multiplier,
                    step.axiom,
                    step.description
                );
                let _ = writeln!(out, "   {}", step.form);
            }
            let _ = writeln!(out, "result: {}", d.relation.text);
            let _ = writeln!(out, "agrees with main: {}", d.agrees_with_main);
        }
        Report::Boundary(b) => {
            let _ = writeln!(out, "boundary strata, g={}, r={}", b.g, b.r);
            for l in &b.labels {
                let _ = write!(
                    out,
                    "{}: node {{{}, {}}}, ramification {}, components {}",
                    label_name(l),
                    l.order.u,
                    l.order.v,
                    l.ramification,
                    l.components_above
                );
                if let Some(gl) = &l.gluing {
                    let _ = write!(out, ", gluings {}", gl.ell);
                    if let Some((lo, hi)) = gl.self_dual_range {
                        let _ = write!(out, " (up to inversion: between {lo} and {hi})");
                    }
                }
                out.push('\n');
            }
        }
        Report::Components(c) => {
            let _ = writeln!(out, "{}", c.components);
            let _ = writeln!(out, "ell: {}", c.ell);
            let _ = writeln!(out, "spin structures: {}", c.spin_structures);
        }
        Report::Torsion(t) => certificate_text(&mut out, &t.certificate),
        Report::Presentation(p) => {
            let _ = writeln!(out, "open-locus presentation, r={}", p.r);
            presentation_rows(&mut out, &p.presentation);
            let _ = writeln!(out, "structure: {}", p.structure);
            for o in &p.generator_orders {
                let _ = writeln!(out, "order of {}: {}", o.generator, o.order);
            }
        }
        Report::Genus1(g) => {
            let _ = writeln!(out, "genus one, r={}", g.r);
            let _ = writeln!(out, "weights: {}, {}", g.chow.weights[0], g.chow.weights[1]);
            let _ = writeln!(out, "open Chow ring: {}", g.chow.open);
            let _ = writeln!(out, "compactified Chow ring: {}", g.chow.compactified);
            let _ = writeln!(out, "component (1):");
            presentation_rows(&mut out, &g.component_one);
            let _ = writeln!(out, "structure: {}", g.component_one_structure);
            let _ = writeln!(out, "order of μ⁺: {}", g.mu_plus_order);
            for b in &g.bounds {
                let _ = writeln!(
                    out,
                    "component ({}): order of μ⁺ in [{}, {}], {} {}",
                    b.d, b.lower_bound, b.upper_bound, b.conjecture.label, b.conjecture.order
                );
            }
            if let Some(n) = g.iso_class_count {
                let _ = writeln!(out, "isomorphism classes: {n}");
            }
            let _ = writeln!(out, "sanity residual: {}", g.sanity_residual);
        }
        Report::Pullback(p) => {
            let _ = writeln!(out, "pullback of {} from s={} to r={}", p.symbol, p.s, p.r);
            let _ = writeln!(out, "source: {}", p.source);
            let _ = writeln!(out, "pulled back: {}", p.pulled_back);
            if let Some(d) = &p.direct {
                let _ = writeln!(out, "direct: {d}");
                let _ = writeln!(out, "agrees: {}", d == &p.pulled_back);
            }
        }
    }
    out
}

fn latex_relations(out: &mut String, entries: &[RelationEntry]) {
    out.push_str("\\begin{align*}\n");
    for (i, e) in entries.iter().enumerate() {
        let (lhs, rhs) = e.latex.split_once(" = ").unwrap_or((&e.latex, "0"));
        let end = if i + 1 < entries.len() { " \\\\" } else { "" };
        let _ = writeln!(out, "{lhs} &= {rhs} && (s={}){end}", e.s);
    }
    out.push_str("\\end{align*}\n");
}

fn latex_class(c: &DivisorClass) -> String {
    c.latex()
}

fn latex_matrix(p: &spinpic_core::AbelianPresentation) -> String {
    let mut out = String::from("\\begin{pmatrix}\n");
    for i in 0..p.relations.rows() {
        let row: Vec<String> = p.relations.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{} \\\\", row.join(" & "));
    }
    out.push_str("\\end{pmatrix}");
    out
}

fn latex_group(g: &spinpic_core::GroupStructure) -> String {
    g.to_string()
        .replace('ℤ', "\\mathbb{Z}")
        .replace('⊕', "\\oplus")
}

pub fn latex(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Table(t) => out.push_str(&table_latex(&t.rows)),
        Report::Relation(r) => latex_relations(&mut out, &r.relations),
        Report::Bis(b) => latex_relations(&mut out, &b.relations),
        Report::Derive(d) => {
            out.push_str("\\begin{align*}\n");
            for step in &d.trace.steps {
                let _ = writeln!(out, "% {} x {:?}", step.multiplier, step.axiom);
            }
            let (lhs, rhs) = d
                .relation
                .latex
                .split_once(" = ")
                .unwrap_or((&d.relation.latex, "0"));
            let _ = writeln!(out, "{lhs} &= {rhs}");
            out.push_str("\\end{align*}\n");
        }
        Report::Boundary(b) => {
            out.push_str("\\begin{tabular}{|l|c|r|r|r|}\n\\hline\n");
            out.push_str("stratum & node & ramification & components & gluings \\\\\n\\hline\n");
            for l in &b.labels {
                let name = match l.kind {
                    BoundaryKind::Alpha(i) => format!("$\\delta_{{{i}}}$"),
                    BoundaryKind::Gamma(j) => format!("$\\gamma_{{{j}}}$"),
                };
                let gluings = l
                    .gluing
                    .as_ref()
                    .map(|g| g.ell.to_string())
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{name} & $\\{{{}, {}\\}}$ & {} & {} & {gluings} \\\\",
                    l.order.u, l.order.v, l.ramification, l.components_above
                );
            }
            out.push_str("\\hline\n\\end{tabular}\n");
        }
        Report::Components(c) => {
            let m: Vec<String> = c.m.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "$d_{{{},{}}}({}) = {}$",
                c.g,
                c.r,
                m.join(","),
                c.components
            );
        }
        Report::Torsion(t) => {
            let c = &t.certificate;
            let order = c
                .statement
                .to_string()
                .replace('∈', "\\in")
                .replace('{', "\\{")
                .replace('}', "\\}");
            let _ = writeln!(out, "$$\n{}\n$$\n{order}", latex_class(&c.candidate));
        }
        Report::Presentation(p) => {
            let gens: Vec<String> = p
                .presentation
                .generators
                .iter()
                .map(|g| format!("${g}$"))
                .collect();
            let _ = writeln!(out, "% generators: {}", gens.join(", "));
            let _ = writeln!(out, "$$\n{}\n$$", latex_matrix(&p.presentation));
            let _ = writeln!(out, "$${}$$", latex_group(&p.structure));
        }
        Report::Genus1(g) => {
            let ring = |c: &spinpic_core::picard::ChowPresentation| match c.degree {
                1 => format!("\\mathbb{{Z}}[t]/{}t", c.modulus),
                n => format!("\\mathbb{{Z}}[t]/{}t^{{{n}}}", c.modulus),
            };
            let _ = writeln!(
                out,
                "$${}, \\qquad {}$$",
                ring(&g.chow.open),
                ring(&g.chow.compactified)
            );
            let _ = writeln!(out, "$$\\mathrm{{ord}}(\\mu^+) = {}$$", g.mu_plus_order);
            for b in &g.bounds {
                let _ = writeln!(
                    out,
                    "% d={}: {} <= ord <= {}, {} {}",
                    b.d, b.lower_bound, b.upper_bound, b.conjecture.label, b.conjecture.order
                );
            }
        }
        Report::Pullback(p) => {
            let _ = writeln!(
                out,
                "$$\\pi^*\\left({}\\right) = {}$$",
                latex_class(&p.source),
                latex_class(&p.pulled_back)
            );
        }
    }
    out
}
