//! The decomposition and transformation formula catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expression, FunctionTerm, ParamExpr};
use crate::params::{ParameterMap, Symbol};
use crate::profiles::Profile;
use crate::report::{sort_reports, CheckMode, Settings, TargetKind, VerificationReport};
use crate::scalar::Rational;
use crate::series::Biseries;

const EMBEDDED: &str = include_str!("../data/catalog.json");

/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "HUMBERT_CATALOG";

/// Default verification degree.
pub const DEFAULT_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaSpec {
    pub id: String,
    pub lhs: Expression,
    pub rhs: Expression,
    pub symbols: Vec<Symbol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl FormulaSpec {
    /// Symbols referenced by either side.
    pub fn used_symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.lhs.symbols();
        s.extend(self.rhs.symbols());
        s
    }

    fn validate(&self) -> Result<()> {
        let declared: BTreeSet<Symbol> = self.symbols.iter().copied().collect();
        let used = self.used_symbols();
        if declared != used {
            return Err(Error::Parse(format!(
                "formula {}: declared symbols {:?} differ from used symbols {:?}",
                self.id, declared, used
            )));
        }
        Ok(())
    }

    pub fn sides(&self, params: &ParameterMap, degree: usize) -> Result<(Biseries<Rational>, Biseries<Rational>)> {
        for sym in &self.symbols {
            params.require(*sym)?;
        }
        Ok((self.lhs.assemble(params, degree)?, self.rhs.assemble(params, degree)?))
    }

    /// Exact coefficientwise comparison at total degree `degree`.
    pub fn verify(&self, params: &ParameterMap, degree: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        let (lhs, rhs) = self.sides(params, degree)?;
        let settings = Settings { degree: Some(degree), ..Default::default() };
        Ok(VerificationReport::exact(TargetKind::Formula, &self.id, &lhs, &rhs, settings, started))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    formulas: Vec<FormulaSpec>,
}

impl Catalog {
    pub fn new(formulas: Vec<FormulaSpec>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for f in &formulas {
            if !seen.insert(f.id.clone()) {
                return Err(Error::Parse(format!("duplicate formula id {}", f.id)));
            }
            f.validate()?;
        }
        Ok(Catalog { formulas })
    }

    /// The catalog compiled into the crate.
    pub fn embedded() -> Self {
        Catalog::from_json(EMBEDDED).expect("embedded catalog is valid")
    }

    /// `$HUMBERT_CATALOG` if set, else the embedded catalog.
    pub fn load_default() -> Result<Self> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => Catalog::load(&PathBuf::from(path)),
            None => Ok(Catalog::embedded()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Catalog::new(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Catalog::from_json(&text)
    }

    /// Pretty JSON with a trailing newline; the shipped file is in this form.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.formulas).expect("catalog serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn formulas(&self) -> &[FormulaSpec] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.formulas.iter().map(|f| f.id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Result<&FormulaSpec> {
        self.formulas.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFormula(id.to_string()))
    }

    /// Union of all symbols any formula needs.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.formulas.iter().flat_map(|f| f.symbols.iter().copied()).collect()
    }
}

pub fn verify_formula(catalog: &Catalog, id: &str, params: &ParameterMap, degree: usize) -> Result<VerificationReport> {
    catalog.get(id)?.verify(params, degree)
}

fn verify_or_error(spec: &FormulaSpec, profile: &Profile, degree: usize, variant: &str) -> VerificationReport {
    let started = Instant::now();
    let settings = Settings {
        degree: Some(degree),
        profile: Some(profile.name.clone()),
        variant: Some(variant.to_string()),
        quadrature: None,
    };
    match spec.verify(&profile.params_for(&spec.id), degree) {
        Ok(mut r) => {
            r.settings = settings;
            r
        }
        Err(e) => VerificationReport::failed(TargetKind::Formula, &spec.id, CheckMode::Exact, &e, settings, started),
    }
}

/// Every formula as printed, plus the overlay entry for each id the
/// overlay corrects. Sorted by id, as-printed first.
pub fn verify_all(catalog: &Catalog, profile: &Profile, degree: usize, overlay: Option<&Catalog>) -> Vec<VerificationReport> {
    let mut jobs: Vec<(&FormulaSpec, &str)> = catalog.formulas.iter().map(|f| (f, "as-printed")).collect();
    if let Some(o) = overlay {
        jobs.extend(o.formulas.iter().map(|f| (f, "overlay")));
    }
    let mut reports: Vec<_> = jobs.par_iter().map(|(f, v)| verify_or_error(f, profile, degree, v)).collect();
    sort_reports(&mut reports);
    reports
}

/// An auxiliary-parameter coincidence under which an expansion keeps
/// only its `(0, 0)` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseCase {
    pub id: &'static str,
    /// `(target, source)`: bind `target` to the value of `source`.
    pub bindings: Vec<(Symbol, Symbol)>,
}

impl CollapseCase {
    pub fn label(&self) -> String {
        self.bindings.iter().map(|(t, s)| format!("{t} = {s}")).collect::<Vec<_>>().join(", ")
    }

    pub fn apply(&self, params: &ParameterMap) -> Result<ParameterMap> {
        let mut out = params.clone();
        for (t, s) in &self.bindings {
            out.set(*t, params.require(*s)?.clone());
        }
        Ok(out)
    }
}

/// All coincidence cases that collapse an expansion.
pub fn collapse_cases() -> Vec<CollapseCase> {
    use Symbol::*;
    let table: &[(&[&'static str], &[(Symbol, Symbol)])] = &[
        (&["2.36", "2.37", "2.51", "2.57", "2.58"], &[(Eps, Alpha)]),
        (&["2.41", "2.42", "2.52", "2.53", "2.48", "2.49", "2.64"], &[(Eps, Beta)]),
        (&["2.44", "2.45"], &[(Eps1, Beta1)]),
        (&["2.46", "2.47"], &[(Eps1, Beta1), (Eps2, Beta2)]),
        (&["2.38", "2.43", "2.50", "2.65", "2.70"], &[(Eps, Gamma)]),
        (&["2.62", "2.63"], &[(Eps1, Alpha1), (Eps2, Alpha2)]),
        (&["2.66", "2.67"], &[(Eps1, Alpha)]),
        (&["2.68", "2.69"], &[(Eps2, Beta)]),
        (&["2.56"], &[(Eps, Gamma2)]),
        (&["2.59"], &[(Eps1, Gamma1)]),
        (&["2.60"], &[(Eps2, Gamma2)]),
        (&["2.61"], &[(Eps1, Gamma1), (Eps2, Gamma2)]),
        (&["2.40"], &[(Alpha, Gamma)]),
        (&["2.55"], &[(Beta, Gamma1)]),
    ];
    table
        .iter()
        .flat_map(|(ids, b)| ids.iter().map(move |id| CollapseCase { id, bindings: b.to_vec() }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseOutcome {
    pub id: String,
    pub label: String,
    /// Outer terms with non-zero coefficient up to the degree.
    pub surviving_terms: usize,
    /// The `(0, 0)` inner term equals the left side.
    pub reduces_to_lhs: bool,
    /// The full expansion equals the left side.
    pub rhs_equals_lhs: bool,
}

impl CollapseOutcome {
    pub fn passed(&self) -> bool {
        self.surviving_terms == 1 && self.reduces_to_lhs && self.rhs_equals_lhs
    }
}

pub fn check_collapse(catalog: &Catalog, case: &CollapseCase, params: &ParameterMap, degree: usize) -> Result<CollapseOutcome> {
    let spec = catalog.get(case.id)?;
    let Expression::Expansion(e) = &spec.rhs else {
        return Err(Error::Parse(format!("formula {} has no expansion side", spec.id)));
    };
    let p = case.apply(params)?;
    let (lhs, rhs) = spec.sides(&p, degree)?;
    let bare = e.inner.assemble::<Rational>(&p, 0, 0, degree)?;
    Ok(CollapseOutcome {
        id: spec.id.clone(),
        label: case.label(),
        surviving_terms: e.surviving_terms(&p, degree)?,
        reduces_to_lhs: bare == lhs,
        rhs_equals_lhs: rhs == lhs,
    })
}

/// The two sides of the shifted-function identity behind the first
/// expansion: `(-m)_i (-n)_j c[m,n](eps, beta, gamma)` against
/// `(-1)^(i+j) (eps)_(i+j) (beta)_i / (gamma)_(i+j) c[m-i,n-j](eps+i+j, beta+i, gamma+i+j)`.
pub fn shifted_function_sides(params: &ParameterMap, i: usize, j: usize, degree: usize) -> Result<(Biseries<Rational>, Biseries<Rational>)> {
    use crate::operator::{delta_pochhammer_action, Var};
    use crate::scalar::{pochhammer, ratio};
    use crate::series::{FunctionRef, Kind};

    let eps = params.require(Symbol::Eps)?.clone();
    let beta = params.require(Symbol::Beta)?.clone();
    let gamma = params.require(Symbol::Gamma)?.clone();
    let phi1 = |a: &Rational, b: &Rational, c: &Rational| {
        let p = ParameterMap::new().with(Symbol::Alpha, a.clone()).with(Symbol::Beta, b.clone()).with(Symbol::Gamma, c.clone());
        FunctionRef::new(Kind::Phi1, p)?.truncated_series::<Rational>(degree)
    };
    let base = phi1(&eps, &beta, &gamma)?;
    let lhs = delta_pochhammer_action(&delta_pochhammer_action(&base, Var::X, i), Var::Y, j);

    let ij = ratio((i + j) as i64, 1);
    let shifted = phi1(&(eps.clone() + ij.clone()), &(beta.clone() + ratio(i as i64, 1)), &(gamma.clone() + ij))?;
    let sign = if (i + j).is_multiple_of(2) { ratio(1, 1) } else { ratio(-1, 1) };
    let den = pochhammer(&gamma, i + j);
    if den == ratio(0, 1) {
        return Err(Error::Pole(format!("(gamma)_{}", i + j)));
    }
    let scale = sign * pochhammer(&eps, i + j) * pochhammer(&beta, i) / den;
    let mut rhs = Biseries::zero(degree);
    rhs.add_shifted(&shifted, &scale, i, j);
    Ok((lhs, rhs))
}

/// A single perturbed parameter expression in a formula's right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutation {
    pub id: String,
    pub description: String,
    pub spec: FormulaSpec,
}

fn visit_rhs(rhs: &mut Expression, f: &mut dyn FnMut(String, &mut ParamExpr)) {
    let inner = |t: &mut FunctionTerm, path: &str, f: &mut dyn FnMut(String, &mut ParamExpr)| {
        if let Some(spec) = t.function.as_mut() {
            for (sym, e) in spec.params.iter_mut() {
                f(format!("{path} parameter {sym}"), e);
            }
        }
    };
    match rhs {
        Expression::Expansion(e) => {
            for (k, p) in e.num.iter_mut().enumerate() {
                f(format!("numerator factor {k}"), &mut p.param);
            }
            for (k, p) in e.den.iter_mut().enumerate() {
                f(format!("denominator factor {k}"), &mut p.param);
            }
            inner(&mut e.inner, "inner", f);
        }
        Expression::Term(t) => inner(t, "function", f),
    }
}

/// Shifts one Pochhammer argument or inner parameter of the right side by +1.
pub fn mutate<R: Rng>(spec: &FormulaSpec, rng: &mut R) -> Mutation {
    let mut spec = spec.clone();
    let mut count = 0;
    visit_rhs(&mut spec.rhs, &mut |_, _| count += 1);
    let pick = rng.gen_range(0..count);
    let mut seen = 0;
    let mut description = String::new();
    visit_rhs(&mut spec.rhs, &mut |what, e| {
        if seen == pick {
            let shifted = e.shifted(1);
            description = format!("{what}: `{}` -> `{}`", e.source(), shifted.source());
            *e = shifted;
        }
        seen += 1;
    });
    Mutation { id: spec.id.clone(), description, spec }
}

/// Groups reports by id so as-printed and overlay outcomes sit together.
pub fn by_id(reports: &[VerificationReport]) -> BTreeMap<String, Vec<&VerificationReport>> {
    let mut out: BTreeMap<String, Vec<&VerificationReport>> = BTreeMap::new();
    for r in reports {
        out.entry(r.id.clone()).or_default().push(r);
    }
    out
}
