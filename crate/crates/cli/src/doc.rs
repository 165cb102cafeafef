//! The declarative workspace document: JSON schema, validation with
//! positioned diagnostics, and resolution into core objects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use hdet_core::algebra::{PTable, QuantExterior, QuantumWeyl, Quotient, SkewPoly, Weyl};
use hdet_core::exact::{parse_rat, ParamScalar, Poly, Rat, RatFun};
use hdet_core::{Algebra, Automorphism};

pub const SCHEMA: &str = "hdet/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<ParameterDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub automorphisms: BTreeMap<String, AutoDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

/// Algebra descriptors. The `p` tables list entries "i,j" (1-based, i < j);
/// missing pairs default to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDoc {
    Skew {
        degrees: Vec<u32>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        p: BTreeMap<String, String>,
    },
    QuantExterior {
        n: usize,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        p: BTreeMap<String, String>,
    },
    Exterior {
        n: usize,
    },
    Weyl {
        n: usize,
    },
    QuantumWeyl {
        n: usize,
        q: String,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        p: BTreeMap<String, String>,
    },
    Tensor {
        left: String,
        right: String,
    },
    Quotient {
        base: String,
        /// 1-based generator index of the normal element x_var^power.
        var: usize,
        power: u32,
    },
}

/// Generator-image list: each generator maps to a linear combination with
/// "p/q" coefficients keyed by generator name, plus an optional constant
/// term under the key "1". Missing generators map to themselves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoDoc {
    pub algebra: String,
    pub images: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// Declared expected values; the report flags disagreements between the
/// declaration and the computed result instead of failing.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hdet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<SeriesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub molien: Option<SeriesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

fn is_default_expect(e: &Option<Expect>) -> bool {
    e.is_none()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauDoc {
    Named(String),
    /// 1-based images: tau[i] is the image of node i+1.
    Perm(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LieAutoDoc {
    Identity,
    Diagram {
        tau: TauDoc,
    },
    /// exp(ad x) for the element with the given coefficients, keyed by
    /// basis labels h1.., e1.., f1..
    Inner {
        element: BTreeMap<String, String>,
    },
    Matrix {
        entries: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskDoc {
    Trace {
        algebra: String,
        auto: String,
        #[serde(default, skip_serializing_if = "is_default_expect")]
        expect: Option<Expect>,
    },
    Hdet {
        algebra: String,
        auto: String,
        #[serde(default, skip_serializing_if = "is_default_expect")]
        expect: Option<Expect>,
    },
    Molien {
        algebra: String,
        group: String,
        #[serde(default, skip_serializing_if = "is_default_expect")]
        expect: Option<Expect>,
    },
    Stanley {
        algebra: String,
        group: String,
    },
    Reynolds {
        algebra: String,
        group: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        maxdeg: Option<u32>,
    },
    Oracle {
        algebra: String,
        auto: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        maxdeg: Option<u32>,
    },
    Verdict {
        algebra: String,
        group: String,
        #[serde(default, skip_serializing_if = "is_default_expect")]
        expect: Option<Expect>,
    },
    Weyl {
        n: usize,
        group: String,
    },
    Qweyl {
        algebra: String,
        group: String,
    },
    LieDet {
        #[serde(rename = "type")]
        lie_type: String,
        rank: usize,
        tau: TauDoc,
        #[serde(default, skip_serializing_if = "is_default_expect")]
        expect: Option<Expect>,
    },
    UVerdict {
        #[serde(rename = "type")]
        lie_type: String,
        rank: usize,
        autos: Vec<LieAutoDoc>,
        #[serde(default, skip_serializing_if = "is_default_expect")]
        expect: Option<Expect>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug)]
pub enum ParseFailure {
    Syntax { line: usize, column: usize, message: String },
    Invalid(Vec<Diagnostic>),
}

impl std::fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseFailure::Syntax { line, column, message } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            ParseFailure::Invalid(ds) => {
                writeln!(f, "document is invalid:")?;
                for d in ds {
                    writeln!(f, "  {d}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses the JSON text into a workspace document (syntax and schema-tag
/// check only; semantic validation happens when resolving).
pub fn parse_document(text: &str) -> Result<WorkspaceDoc, ParseFailure> {
    let doc: WorkspaceDoc = serde_json::from_str(text).map_err(|e| ParseFailure::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema != SCHEMA {
        return Err(ParseFailure::Invalid(vec![Diagnostic {
            path: "schema".into(),
            message: format!("expected \"{SCHEMA}\", found \"{}\"", doc.schema),
        }]));
    }
    Ok(doc)
}

pub fn print_document(doc: &WorkspaceDoc) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes")
}

/// Fully resolved workspace: every name bound, every automorphism certified.
#[derive(Debug)]
pub struct Resolved {
    pub doc: WorkspaceDoc,
    pub params: BTreeMap<String, Option<Rat>>,
    pub algebras: BTreeMap<String, Algebra>,
    pub autos: BTreeMap<String, Automorphism>,
}

struct Resolver<'a> {
    doc: &'a WorkspaceDoc,
    params: BTreeMap<String, Option<Rat>>,
    algebras: BTreeMap<String, Algebra>,
    diags: Vec<Diagnostic>,
}

impl<'a> Resolver<'a> {
    fn diag(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            path: path.into(),
            message: message.into(),
        });
    }

    /// Scalar expressions: '*'-separated factors, each a "p/q" literal or a
    /// declared parameter name, optionally with an integer exponent "^k".
    fn parse_scalar(&mut self, path: &str, text: &str) -> Option<ParamScalar> {
        let mut acc = ParamScalar::one();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let exp: i64 = match e.trim().parse() {
                        Ok(v) => v,
                        Err(_) => {
                            self.diag(path, format!("invalid exponent in \"{factor}\""));
                            return None;
                        }
                    };
                    (b.trim(), exp)
                }
                None => (factor, 1),
            };
            let scalar = if base
                .chars()
                .next()
                .map_or(false, |c| c.is_ascii_alphabetic())
            {
                match self.params.get(base) {
                    Some(Some(v)) => ParamScalar::from_rat(v.clone()),
                    Some(None) => ParamScalar::symbol(base),
                    None => {
                        self.diag(path, format!("unknown parameter \"{base}\""));
                        return None;
                    }
                }
            } else {
                match parse_rat(base) {
                    Ok(v) => ParamScalar::from_rat(v),
                    Err(_) => {
                        self.diag(path, format!("invalid rational \"{base}\""));
                        return None;
                    }
                }
            };
            let powered = if exp >= 0 {
                scalar.pow(exp as u32)
            } else {
                match scalar.inverse() {
                    Ok(inv) => inv.pow((-exp) as u32),
                    Err(_) => {
                        self.diag(path, format!("\"{base}\" is not invertible"));
                        return None;
                    }
                }
            };
            acc = &acc * &powered;
        }
        Some(acc)
    }

    fn parse_rational(&mut self, path: &str, text: &str) -> Option<Rat> {
        match parse_rat(text) {
            Ok(v) => Some(v),
            Err(_) => {
                self.diag(path, format!("invalid rational \"{text}\""));
                None
            }
        }
    }

    fn parse_ptable(&mut self, path: &str, n: usize, p: &BTreeMap<String, String>) -> Option<PTable> {
        let mut upper = vec![ParamScalar::one(); n * (n - 1) / 2];
        let index = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
        for (key, value) in p {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            let ok = parts.len() == 2;
            let ij = if ok {
                match (parts[0].parse::<usize>(), parts[1].parse::<usize>()) {
                    (Ok(i), Ok(j)) if i >= 1 && j >= 1 && i < j && j <= n => Some((i - 1, j - 1)),
                    _ => None,
                }
            } else {
                None
            };
            let Some((i, j)) = ij else {
                self.diag(
                    format!("{path}.{key}"),
                    "p-table keys are \"i,j\" with 1 <= i < j <= n",
                );
                return None;
            };
            let scalar = self.parse_scalar(&format!("{path}.{key}"), value)?;
            if !scalar.is_single_term() {
                self.diag(format!("{path}.{key}"), "p-table entries must be invertible");
                return None;
            }
            upper[index(i, j)] = scalar;
        }
        match PTable::new(n, upper) {
            Ok(t) => Some(t),
            Err(e) => {
                self.diag(path, e.to_string());
                None
            }
        }
    }

    fn resolve_algebra(&mut self, name: &str, stack: &mut Vec<String>) -> Option<Algebra> {
        if let Some(a) = self.algebras.get(name) {
            return Some(a.clone());
        }
        if stack.iter().any(|s| s == name) {
            self.diag(
                format!("algebras.{name}"),
                "cyclic reference between algebra descriptors",
            );
            return None;
        }
        let Some(spec) = self.doc.algebras.get(name) else {
            return None; // caller reports the unknown reference
        };
        stack.push(name.to_string());
        let path = format!("algebras.{name}");
        let result = match spec.clone() {
            AlgebraDoc::Skew { degrees, p } => {
                let n = degrees.len();
                let table = self.parse_ptable(&format!("{path}.p"), n, &p)?;
                match SkewPoly::new(degrees, table) {
                    Ok(a) => Some(Algebra::Skew(a)),
                    Err(e) => {
                        self.diag(&path, e.to_string());
                        None
                    }
                }
            }
            AlgebraDoc::QuantExterior { n, p } => {
                let table = self.parse_ptable(&format!("{path}.p"), n, &p)?;
                Some(Algebra::QuantExterior(QuantExterior::new(table)))
            }
            AlgebraDoc::Exterior { n } => {
                Some(Algebra::QuantExterior(QuantExterior::exterior(n)))
            }
            AlgebraDoc::Weyl { n } => Some(Algebra::Weyl(Weyl::new(n))),
            AlgebraDoc::QuantumWeyl { n, q, p } => {
                let qv = self.parse_scalar(&format!("{path}.q"), &q)?;
                let table = self.parse_ptable(&format!("{path}.p"), n, &p)?;
                match QuantumWeyl::new(n, qv, table) {
                    Ok(a) => Some(Algebra::QuantumWeyl(a)),
                    Err(e) => {
                        self.diag(&path, e.to_string());
                        None
                    }
                }
            }
            AlgebraDoc::Tensor { left, right } => {
                let l = self.resolve_named_algebra(&format!("{path}.left"), &left, stack)?;
                let r = self.resolve_named_algebra(&format!("{path}.right"), &right, stack)?;
                match Algebra::tensor(l, r) {
                    Ok(a) => Some(a),
                    Err(e) => {
                        self.diag(&path, e.to_string());
                        None
                    }
                }
            }
            AlgebraDoc::Quotient { base, var, power } => {
                let b = self.resolve_named_algebra(&format!("{path}.base"), &base, stack)?;
                let Algebra::Skew(skew) = b else {
                    self.diag(&path, "quotient base must be a skew polynomial ring");
                    return None;
                };
                if var == 0 || var > skew.n() {
                    self.diag(format!("{path}.var"), "1-based generator index out of range");
                    return None;
                }
                match Quotient::new(skew, var - 1, power) {
                    Ok(q) => Some(Algebra::Quotient(q)),
                    Err(e) => {
                        self.diag(&path, e.to_string());
                        None
                    }
                }
            }
        };
        stack.pop();
        if let Some(a) = &result {
            self.algebras.insert(name.to_string(), a.clone());
        }
        result
    }

    fn resolve_named_algebra(
        &mut self,
        path: &str,
        name: &str,
        stack: &mut Vec<String>,
    ) -> Option<Algebra> {
        if !self.doc.algebras.contains_key(name) {
            self.diag(path, format!("unknown algebra \"{name}\""));
            return None;
        }
        self.resolve_algebra(name, stack)
    }
}

/// Validates and resolves the document: binds parameters, builds every
/// algebra descriptor, certifies every automorphism, and checks that all
/// group generators resolve. Returns all diagnostics at once on failure.
pub fn resolve(doc: &WorkspaceDoc) -> Result<Resolved, Vec<Diagnostic>> {
    let mut r = Resolver {
        doc,
        params: BTreeMap::new(),
        algebras: BTreeMap::new(),
        diags: Vec::new(),
    };

    for (i, p) in doc.parameters.iter().enumerate() {
        let path = format!("parameters[{i}]");
        if !p
            .name
            .chars()
            .next()
            .map_or(false, |c| c.is_ascii_alphabetic())
            || !p.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            r.diag(&path, format!("invalid parameter name \"{}\"", p.name));
            continue;
        }
        if r.params.contains_key(&p.name) {
            r.diag(&path, format!("duplicate parameter \"{}\"", p.name));
            continue;
        }
        let value = match &p.value {
            None => None,
            Some(text) => match r.parse_rational(&format!("{path}.value"), text) {
                Some(v) => Some(v),
                None => continue,
            },
        };
        r.params.insert(p.name.clone(), value);
    }

    let names: Vec<String> = doc.algebras.keys().cloned().collect();
    for name in &names {
        let mut stack = Vec::new();
        r.resolve_algebra(name, &mut stack);
    }

    let mut autos = BTreeMap::new();
    for (name, spec) in &doc.automorphisms {
        let path = format!("automorphisms.{name}");
        let Some(alg) = r.algebras.get(&spec.algebra).cloned() else {
            r.diag(
                format!("{path}.algebra"),
                format!("unknown algebra \"{}\"", spec.algebra),
            );
            continue;
        };
        let gen_names = alg.generator_names();
        let n = gen_names.len();
        let gen_index = |g: &str| gen_names.iter().position(|h| h == g);
        let mut mat = hdet_core::Matrix::zeros(n, n);
        let mut eps = vec![Rat::from_integer(0.into()); n];
        let mut seen_cols = vec![false; n];
        let mut bad = false;
        for (gen, combo) in &spec.images {
            let Some(col) = gen_index(gen) else {
                r.diag(
                    format!("{path}.images.{gen}"),
                    format!("unknown generator \"{gen}\""),
                );
                bad = true;
                continue;
            };
            seen_cols[col] = true;
            for (target, coeff) in combo {
                let cpath = format!("{path}.images.{gen}.{target}");
                let Some(c) = r.parse_rational(&cpath, coeff) else {
                    bad = true;
                    continue;
                };
                if target == "1" {
                    eps[col] = c;
                } else if let Some(row) = gen_index(target) {
                    mat.set(row, col, c);
                } else {
                    r.diag(cpath, format!("unknown generator \"{target}\""));
                    bad = true;
                }
            }
        }
        if bad {
            continue;
        }
        for (col, seen) in seen_cols.iter().enumerate() {
            if !seen {
                mat.set(col, col, Rat::from_integer(1.into()));
            }
        }
        match Automorphism::filtered(alg, mat, eps) {
            Ok(a) => {
                autos.insert(name.clone(), a);
            }
            Err(e) => r.diag(path, format!("not an automorphism: {e}")),
        }
    }

    for (name, g) in &doc.groups {
        for (i, gen) in g.generators.iter().enumerate() {
            if !doc.automorphisms.contains_key(gen) {
                r.diag(
                    format!("groups.{name}.generators[{i}]"),
                    format!("unknown automorphism \"{gen}\""),
                );
            }
        }
    }

    for (i, task) in doc.tasks.iter().enumerate() {
        let path = format!("tasks[{i}]");
        let check_algebra = |r: &mut Resolver, name: &str| {
            if !doc.algebras.contains_key(name) {
                r.diag(format!("{path}.algebra"), format!("unknown algebra \"{name}\""));
            }
        };
        let check_auto = |r: &mut Resolver, name: &str| {
            if !doc.automorphisms.contains_key(name) {
                r.diag(format!("{path}.auto"), format!("unknown automorphism \"{name}\""));
            }
        };
        let check_group = |r: &mut Resolver, name: &str| {
            if !doc.groups.contains_key(name) {
                r.diag(format!("{path}.group"), format!("unknown group \"{name}\""));
            }
        };
        match task {
            TaskDoc::Trace { algebra, auto, .. }
            | TaskDoc::Hdet { algebra, auto, .. }
            | TaskDoc::Oracle { algebra, auto, .. } => {
                check_algebra(&mut r, algebra);
                check_auto(&mut r, auto);
            }
            TaskDoc::Molien { algebra, group, .. }
            | TaskDoc::Stanley { algebra, group }
            | TaskDoc::Reynolds { algebra, group, .. }
            | TaskDoc::Verdict { algebra, group, .. }
            | TaskDoc::Qweyl { algebra, group } => {
                check_algebra(&mut r, algebra);
                check_group(&mut r, group);
            }
            TaskDoc::Weyl { group, .. } => check_group(&mut r, group),
            TaskDoc::LieDet { lie_type, .. } | TaskDoc::UVerdict { lie_type, .. } => {
                if hdet_core::lie::LieType::parse(lie_type).is_err() {
                    r.diag(format!("{path}.type"), format!("unknown type \"{lie_type}\""));
                }
            }
        }
    }

    if r.diags.is_empty() {
        Ok(Resolved {
            doc: doc.clone(),
            params: r.params,
            algebras: r.algebras,
            autos,
        })
    } else {
        Err(r.diags)
    }
}

/// Parses a declared series (coefficient arrays, lowest degree first) into
/// a canonical rational function.
pub fn series_from_doc(s: &SeriesDoc) -> Option<RatFun> {
    let parse_coeffs = |v: &[String]| -> Option<Vec<Rat>> {
        v.iter().map(|c| parse_rat(c).ok()).collect()
    };
    let num = Poly::new(parse_coeffs(&s.num)?);
    let den = Poly::new(parse_coeffs(&s.den)?);
    RatFun::new(num, den).ok()
}
