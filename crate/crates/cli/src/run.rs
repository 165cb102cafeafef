//! Task execution: each document task maps to one core operation and
//! contributes one report section.

use hdet_core::auto::{group_closure, AutGroup, Automorphism};
use hdet_core::exact::{parse_rat, rat_to_string, Matrix, Rat, RatFun};
use hdet_core::lie::{
    chevalley_constants, diagram_auto_matrix, inner_exp, u_verdict, ChevalleyLieAlgebra,
    DiagramAuto, LieAuto, LieType,
};
use hdet_core::qweyl::qweyl_verdict;
use hdet_core::weyl::{weyl_verdict, AffineCandidate};
use hdet_core::{
    hdet, molien, reynolds_dims, stanley_check, trace_bruteforce, trace_closed, verdict, Algebra,
    Error, Outcome, Verdict,
};

use crate::doc::{series_from_doc, LieAutoDoc, Resolved, TaskDoc, TauDoc};
use crate::report::{Report, Section};

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub max_degree: u32,
    pub group_cap: usize,
    pub check_oracle: Option<u32>,
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_degree: 8,
            group_cap: 10_000,
            check_oracle: None,
            seed: None,
        }
    }
}

pub struct RunResult {
    pub report: Report,
    pub task_errors: usize,
    pub internal_errors: usize,
}

fn is_internal(e: &Error) -> bool {
    matches!(
        e,
        Error::InternalInconsistency(_)
            | Error::DeterminantNotOne
            | Error::NotDiagonalizableShape
            | Error::ShapeViolation(_)
            | Error::LeadingExponentMismatch { .. }
            | Error::ExtensionInconsistent
    )
}

struct Ctx<'a> {
    resolved: &'a Resolved,
    opts: &'a RunOptions,
}

impl<'a> Ctx<'a> {
    fn algebra(&self, name: &str) -> Result<&Algebra, Error> {
        self.resolved
            .algebras
            .get(name)
            .ok_or_else(|| Error::UnsupportedAlgebra(format!("unknown algebra \"{name}\"")))
    }

    fn auto(&self, name: &str) -> Result<&Automorphism, Error> {
        self.resolved
            .autos
            .get(name)
            .ok_or_else(|| Error::UnsupportedAlgebra(format!("unknown automorphism \"{name}\"")))
    }

    fn group_generators(&self, name: &str) -> Result<Vec<Automorphism>, Error> {
        let g = self
            .resolved
            .doc
            .groups
            .get(name)
            .ok_or_else(|| Error::UnsupportedAlgebra(format!("unknown group \"{name}\"")))?;
        g.generators.iter().map(|s| self.auto(s).cloned()).collect()
    }

    fn group(&self, name: &str) -> Result<AutGroup, Error> {
        let gens = self.group_generators(name)?;
        if gens.is_empty() {
            return Err(Error::UnsupportedAlgebra(format!(
                "group \"{name}\" has no generators"
            )));
        }
        group_closure(&gens, self.opts.group_cap)
    }
}

fn expect_rat(section: &mut Section, label: &str, declared: &Option<String>, computed: &Rat) {
    if let Some(d) = declared {
        match parse_rat(d) {
            Ok(v) if &v == computed => {}
            Ok(v) => section.conflict(format!(
                "declared {label} = {}, computed {label} = {}",
                rat_to_string(&v),
                rat_to_string(computed)
            )),
            Err(_) => section.conflict(format!("declared {label} \"{d}\" does not parse")),
        }
    }
}

fn expect_series(
    section: &mut Section,
    label: &str,
    declared: &Option<crate::doc::SeriesDoc>,
    computed: &RatFun,
) {
    if let Some(d) = declared {
        match series_from_doc(d) {
            Some(v) if &v == computed => {}
            Some(v) => section.conflict(format!(
                "declared {label} = {v}, computed {label} = {computed}"
            )),
            None => section.conflict(format!("declared {label} does not parse")),
        }
    }
}

fn expect_verdict(section: &mut Section, declared: &Option<String>, computed: Outcome) {
    if let Some(d) = declared {
        if d != &computed.to_string() {
            section.conflict(format!(
                "declared verdict = {d}, computed verdict = {computed}"
            ));
        }
    }
}

fn verdict_section(section: &mut Section, v: &Verdict) {
    section.line("verdict", v.outcome.to_string());
    section.line("justification", &v.justification);
    let table = |vals: &[Rat]| -> String {
        let items: Vec<String> = vals.iter().map(rat_to_string).collect();
        format!("[{}]", items.join(", "))
    };
    section.line("hdet table", table(&v.hdet_table));
    section.line("det table", table(&v.det_table));
    if let Some(m) = &v.molien {
        section.series_line("molien", m);
    }
    if let Some(s) = &v.stanley {
        section.line("stanley symmetric", s.symmetric.to_string());
        if let (Some(sign), Some(m)) = (s.sign, s.m) {
            section.line("stanley sign", sign.to_string());
            section.line("stanley m", m.to_string());
        }
    }
    for n in &v.notes {
        section.line("note", n);
    }
}

fn oracle_section(
    ctx: &Ctx,
    title: String,
    alg: &Algebra,
    auto: &Automorphism,
    maxdeg: u32,
) -> Result<Section, Error> {
    let mut section = Section::new(title);
    let closed = trace_closed(alg, auto)?;
    section.series_line("closed form", &closed.value);
    section.line(
        "method",
        match closed.method {
            hdet_core::invariants::TraceMethod::ClosedForm => "closed-form".to_string(),
            hdet_core::invariants::TraceMethod::KoszulDual => "koszul-dual".to_string(),
            hdet_core::invariants::TraceMethod::BruteForceTruncated { maxdeg } => {
                format!("brute-force-truncated({maxdeg})")
            }
        },
    );
    let series = closed.value.series_coeffs(maxdeg as usize)?;
    let brute = trace_bruteforce(alg, auto, maxdeg)?;
    let fmt_row = |v: &[Rat]| -> String {
        let items: Vec<String> = v.iter().map(rat_to_string).collect();
        format!("[{}]", items.join(", "))
    };
    section.line("series coefficients", fmt_row(&series));
    section.line("brute force", fmt_row(&brute));
    if series == brute {
        section.line("oracle agreement", format!("exact through degree {maxdeg}"));
    } else {
        section.conflict(format!(
            "closed-form series and brute force disagree within degree {maxdeg}"
        ));
    }
    let _ = ctx;
    Ok(section)
}

fn parse_tau(tau: &TauDoc, alg_rank: usize, rs: &hdet_core::lie::RootSystem) -> Result<DiagramAuto, Error> {
    match tau {
        TauDoc::Named(name) => match name.as_str() {
            "identity" => Ok(DiagramAuto::identity(alg_rank)),
            "reversal" | "canonical" => DiagramAuto::canonical(rs),
            "triality" => {
                if rs.lie_type == LieType::D && rs.rank == 4 {
                    DiagramAuto::new(rs, vec![2, 1, 3, 0])
                } else {
                    Err(Error::NotDiagramSymmetry)
                }
            }
            _ => Err(Error::NotDiagramSymmetry),
        },
        TauDoc::Perm(images) => {
            let zero_based: Vec<usize> = images
                .iter()
                .map(|&i| i.checked_sub(1).ok_or(Error::NotDiagramSymmetry))
                .collect::<Result<_, _>>()?;
            DiagramAuto::new(rs, zero_based)
        }
    }
}

fn resolve_lie_auto(
    alg: &ChevalleyLieAlgebra,
    spec: &LieAutoDoc,
) -> Result<LieAuto, Error> {
    match spec {
        LieAutoDoc::Identity => Ok(LieAuto::graded(Matrix::identity(alg.dim))),
        LieAutoDoc::Diagram { tau } => {
            let t = parse_tau(tau, alg.rank(), &alg.rs)?;
            Ok(LieAuto::graded(diagram_auto_matrix(alg, &t)?))
        }
        LieAutoDoc::Inner { element } => {
            let mut x = vec![Rat::from_integer(0.into()); alg.dim];
            for (label, coeff) in element {
                let idx = (0..alg.dim)
                    .find(|&i| alg.basis_label(i) == *label)
                    .ok_or_else(|| {
                        Error::UnsupportedAlgebra(format!("unknown basis label \"{label}\""))
                    })?;
                x[idx] = parse_rat(coeff)?;
            }
            Ok(LieAuto::graded(inner_exp(alg, &x)?))
        }
        LieAutoDoc::Matrix { entries, eps } => {
            let dim = alg.dim;
            if entries.len() != dim || entries.iter().any(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: entries.len(),
                });
            }
            let mut m = Matrix::zeros(dim, dim);
            for (i, row) in entries.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    m.set(i, j, parse_rat(v)?);
                }
            }
            let eps = match eps {
                None => vec![Rat::from_integer(0.into()); dim],
                Some(e) => {
                    if e.len() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            got: e.len(),
                        });
                    }
                    e.iter().map(|v| parse_rat(v)).collect::<Result<_, _>>()?
                }
            };
            Ok(LieAuto { sigma: m, eps })
        }
    }
}

fn run_task(ctx: &Ctx, idx: usize, task: &TaskDoc) -> (Vec<Section>, Option<Error>) {
    let mut sections = Vec::new();
    let result: Result<(), Error> = (|| {
        match task {
            TaskDoc::Trace { algebra, auto, expect } => {
                let alg = ctx.algebra(algebra)?;
                let g = ctx.auto(auto)?;
                let mut s = Section::new(format!(
                    "task {idx}: trace (algebra {algebra}, automorphism {auto})"
                ));
                let tr = trace_closed(alg, g)?;
                s.series_line("trace", &tr.value);
                let e = expect.clone().unwrap_or_default();
                expect_series(&mut s, "trace", &e.trace, &tr.value);
                sections.push(s);
                if let Some(n) = ctx.opts.check_oracle {
                    sections.push(oracle_section(
                        ctx,
                        format!("task {idx}: oracle check (automorphism {auto})"),
                        alg,
                        g,
                        n,
                    )?);
                }
            }
            TaskDoc::Hdet { algebra, auto, expect } => {
                let alg = ctx.algebra(algebra)?;
                let g = ctx.auto(auto)?;
                let mut s = Section::new(format!(
                    "task {idx}: hdet (algebra {algebra}, automorphism {auto})"
                ));
                let h = hdet(alg, g)?;
                let det = g.mat.det()?;
                s.line("hdet", rat_to_string(&h.value));
                s.line("det g|V", rat_to_string(&det));
                s.line("(d, l)", format!("({}, {})", h.d, h.l));
                s.line(
                    "trace leading term",
                    format!("{} * t^{}", rat_to_string(&h.leading.0), h.leading.1),
                );
                if h.value != det {
                    s.line("note", "hdet differs from det g|V");
                }
                let e = expect.clone().unwrap_or_default();
                expect_rat(&mut s, "hdet", &e.hdet, &h.value);
                expect_rat(&mut s, "det", &e.det, &det);
                expect_series(&mut s, "trace", &e.trace, &h.trace.value);
                sections.push(s);
                if let Some(n) = ctx.opts.check_oracle {
                    sections.push(oracle_section(
                        ctx,
                        format!("task {idx}: oracle check (automorphism {auto})"),
                        alg,
                        g,
                        n,
                    )?);
                }
            }
            TaskDoc::Molien { algebra, group, expect } => {
                let alg = ctx.algebra(algebra)?;
                let grp = ctx.group(group)?;
                let mut s = Section::new(format!(
                    "task {idx}: molien (algebra {algebra}, group {group})"
                ));
                s.line("group order", grp.order().to_string());
                let m = molien(alg, &grp)?;
                s.series_line("molien", &m);
                let e = expect.clone().unwrap_or_default();
                expect_series(&mut s, "molien", &e.molien, &m);
                sections.push(s);
                self_oracle_for_group(ctx, idx, alg, &grp, &mut sections)?;
            }
            TaskDoc::Stanley { algebra, group } => {
                let alg = ctx.algebra(algebra)?;
                let grp = ctx.group(group)?;
                let mut s = Section::new(format!(
                    "task {idx}: stanley (algebra {algebra}, group {group})"
                ));
                let m = molien(alg, &grp)?;
                s.series_line("molien", &m);
                let st = stanley_check(&m)?;
                s.line("symmetric", st.symmetric.to_string());
                if let (Some(sign), Some(mm)) = (st.sign, st.m) {
                    s.line("sign", sign.to_string());
                    s.line("m", mm.to_string());
                }
                sections.push(s);
            }
            TaskDoc::Reynolds { algebra, group, maxdeg } => {
                let alg = ctx.algebra(algebra)?;
                let grp = ctx.group(group)?;
                let n = maxdeg.unwrap_or(ctx.opts.max_degree);
                let mut s = Section::new(format!(
                    "task {idx}: reynolds (algebra {algebra}, group {group})"
                ));
                let dims = reynolds_dims(alg, &grp, n)?;
                let items: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                s.line("invariant dimensions", format!("[{}]", items.join(", ")));
                // cross-check against the Molien series coefficients
                let m = molien(alg, &grp)?;
                let coeffs = m.series_coeffs(n as usize)?;
                let matches = dims
                    .iter()
                    .zip(&coeffs)
                    .all(|(d, c)| &Rat::from_integer((*d as i64).into()) == c);
                if matches {
                    s.line("molien agreement", format!("exact through degree {n}"));
                } else {
                    s.conflict("Reynolds dimensions disagree with the Molien series".to_string());
                }
                sections.push(s);
            }
            TaskDoc::Oracle { algebra, auto, maxdeg } => {
                let alg = ctx.algebra(algebra)?;
                let g = ctx.auto(auto)?;
                let n = maxdeg.unwrap_or(ctx.opts.max_degree);
                sections.push(oracle_section(
                    ctx,
                    format!("task {idx}: oracle (algebra {algebra}, automorphism {auto})"),
                    alg,
                    g,
                    n,
                )?);
            }
            TaskDoc::Verdict { algebra, group, expect } => {
                let alg = ctx.algebra(algebra)?;
                let grp = ctx.group(group)?;
                let mut s = Section::new(format!(
                    "task {idx}: verdict (algebra {algebra}, group {group})"
                ));
                s.line("group order", grp.order().to_string());
                let v = verdict(alg, &grp)?;
                verdict_section(&mut s, &v);
                let e = expect.clone().unwrap_or_default();
                expect_verdict(&mut s, &e.verdict, v.outcome);
                if let Some(m) = &v.molien {
                    expect_series(&mut s, "molien", &e.molien, m);
                }
                sections.push(s);
                self_oracle_for_group(ctx, idx, alg, &grp, &mut sections)?;
            }
            TaskDoc::Weyl { n, group } => {
                let gens = ctx.group_generators(group)?;
                let mut s = Section::new(format!("task {idx}: weyl (n = {n}, group {group})"));
                let expected = Algebra::Weyl(hdet_core::algebra::Weyl::new(*n));
                let mut candidates = Vec::new();
                for g in &gens {
                    if g.algebra != expected {
                        return Err(Error::UnsupportedAlgebra(format!(
                            "group \"{group}\" does not act on the Weyl algebra A_{n}"
                        )));
                    }
                    candidates.push(AffineCandidate {
                        sigma: g.mat.clone(),
                        eps: g.eps.clone(),
                    });
                }
                let v = weyl_verdict(*n, &candidates, ctx.opts.group_cap)?;
                verdict_section(&mut s, &v);
                sections.push(s);
            }
            TaskDoc::Qweyl { algebra, group } => {
                let alg = ctx.algebra(algebra)?;
                let Algebra::QuantumWeyl(qw) = alg else {
                    return Err(Error::UnsupportedAlgebra(format!(
                        "algebra \"{algebra}\" is not a quantum Weyl algebra"
                    )));
                };
                let gens = ctx.group_generators(group)?;
                let mut s = Section::new(format!(
                    "task {idx}: qweyl (algebra {algebra}, group {group})"
                ));
                let v = qweyl_verdict(qw, &gens, ctx.opts.group_cap)?;
                verdict_section(&mut s, &v);
                sections.push(s);
            }
            TaskDoc::LieDet { lie_type, rank, tau, expect } => {
                let t = LieType::parse(lie_type)?;
                let rs = hdet_core::lie::build_root_system(t, *rank)?;
                let alg = chevalley_constants(rs)?;
                let tau = parse_tau(tau, *rank, &alg.rs)?;
                let mut s = Section::new(format!(
                    "task {idx}: lie-det (type {lie_type}{rank})"
                ));
                let m = diagram_auto_matrix(&alg, &tau)?;
                let det = m.det()?;
                s.line("dimension", alg.dim.to_string());
                let images: Vec<String> = tau.tau.iter().map(|i| (i + 1).to_string()).collect();
                s.line("tau (1-based images)", format!("[{}]", images.join(", ")));
                s.line("det", rat_to_string(&det));
                if t == LieType::A {
                    // closed form for the reversal: (-1)^(n(n+3)/2)
                    let exponent = rank * (rank + 3) / 2;
                    let closed = if exponent % 2 == 0 {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::from_integer((-1).into())
                    };
                    if tau.tau.iter().enumerate().all(|(i, &v)| v == *rank - 1 - i) {
                        s.line(
                            "closed form (-1)^(n(n+3)/2)",
                            if closed == det { "matches" } else { "DIFFERS" }.to_string(),
                        );
                    }
                }
                let e = expect.clone().unwrap_or_default();
                expect_rat(&mut s, "det", &e.det, &det);
                sections.push(s);
            }
            TaskDoc::UVerdict { lie_type, rank, autos, expect } => {
                let t = LieType::parse(lie_type)?;
                let rs = hdet_core::lie::build_root_system(t, *rank)?;
                let alg = chevalley_constants(rs)?;
                let mut s = Section::new(format!(
                    "task {idx}: u-verdict (type {lie_type}{rank})"
                ));
                s.line("dimension", alg.dim.to_string());
                let candidates: Vec<LieAuto> = autos
                    .iter()
                    .map(|a| resolve_lie_auto(&alg, a))
                    .collect::<Result<_, _>>()?;
                let v = u_verdict(&alg, &candidates, ctx.opts.group_cap)?;
                verdict_section(&mut s, &v);
                let e = expect.clone().unwrap_or_default();
                expect_verdict(&mut s, &e.verdict, v.outcome);
                if let Some(m) = &v.molien {
                    expect_series(&mut s, "molien", &e.molien, m);
                }
                sections.push(s);
            }
        }
        Ok(())
    })();
    match result {
        Ok(()) => (sections, None),
        Err(e) => (sections, Some(e)),
    }
}

fn self_oracle_for_group(
    ctx: &Ctx,
    idx: usize,
    alg: &Algebra,
    grp: &AutGroup,
    sections: &mut Vec<Section>,
) -> Result<(), Error> {
    if let Some(n) = ctx.opts.check_oracle {
        for (k, g) in grp.elements.iter().enumerate() {
            sections.push(oracle_section(
                ctx,
                format!("task {idx}: oracle check (group element {k})"),
                alg,
                g,
                n,
            )?);
        }
    }
    Ok(())
}

/// Executes the document tasks in order and assembles the report.
pub fn run(resolved: &Resolved, opts: &RunOptions) -> RunResult {
    let ctx = Ctx { resolved, opts };
    let mut report = Report::default();
    report.header.push(("schema".into(), resolved.doc.schema.clone()));
    report
        .header
        .push(("max degree".into(), opts.max_degree.to_string()));
    report
        .header
        .push(("group cap".into(), opts.group_cap.to_string()));
    if let Some(n) = opts.check_oracle {
        report.header.push(("oracle depth".into(), n.to_string()));
    }
    if let Some(s) = opts.seed {
        report.header.push(("seed".into(), s.to_string()));
    }
    let mut task_errors = 0;
    let mut internal_errors = 0;
    for (i, task) in resolved.doc.tasks.iter().enumerate() {
        let (mut sections, error) = run_task(&ctx, i + 1, task);
        if let Some(e) = error {
            if is_internal(&e) {
                internal_errors += 1;
            } else {
                task_errors += 1;
            }
            let mut s = if sections.is_empty() {
                Section::new(format!("task {}", i + 1))
            } else {
                sections.pop().unwrap()
            };
            s.error = Some(e.to_string());
            sections.push(s);
        }
        report.sections.extend(sections);
    }
    RunResult {
        report,
        task_errors,
        internal_errors,
    }
}
