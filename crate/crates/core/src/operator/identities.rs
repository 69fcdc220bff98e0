//! Catalog of operator identities `lhs = O_1 ... O_k operand`.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{h_action, h_bar_action, DiagonalAction, Vars};
use crate::error::{Error, Result};
use crate::expr::{FunctionTerm, ParamExpr};
use crate::params::{ParameterMap, Symbol};
use crate::report::{Settings, TargetKind, VerificationReport};
use crate::scalar::Rational;

const EMBEDDED: &str = include_str!("../../data/identities.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpKind {
    H,
    Hbar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorStep {
    pub op: OpKind,
    pub vars: Vars,
    pub a: ParamExpr,
    pub b: ParamExpr,
}

impl OperatorStep {
    pub fn action(&self, params: &ParameterMap) -> Result<DiagonalAction<Rational>> {
        let a = self.a.eval(params, 0, 0)?;
        let b = self.b.eval(params, 0, 0)?;
        Ok(match self.op {
            OpKind::H => h_action(a, b, self.vars),
            OpKind::Hbar => h_bar_action(a, b, self.vars),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: String,
    pub lhs: FunctionTerm,
    /// Applied right to left, though all of them commute.
    pub operators: Vec<OperatorStep>,
    pub operand: FunctionTerm,
}

impl IdentitySpec {
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = crate::expr::Expression::Term(self.lhs.clone()).symbols();
        out.extend(crate::expr::Expression::Term(self.operand.clone()).symbols());
        for op in &self.operators {
            out.extend(op.a.symbols());
            out.extend(op.b.symbols());
        }
        out
    }

    /// Exact comparison of both sides at total degree `degree`.
    pub fn verify(&self, params: &ParameterMap, degree: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        let lhs = self.lhs.assemble::<Rational>(params, 0, 0, degree)?;
        let mut rhs = self.operand.assemble::<Rational>(params, 0, 0, degree)?;
        for step in self.operators.iter().rev() {
            rhs = step.action(params)?.apply(&rhs)?;
        }
        let settings = Settings { degree: Some(degree), ..Default::default() };
        Ok(VerificationReport::exact(TargetKind::Identity, &self.id, &lhs, &rhs, settings, started))
    }
}

/// The 35 operator identities shipped with the crate.
pub fn identity_catalog() -> &'static [IdentitySpec] {
    static CATALOG: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(EMBEDDED).expect("embedded identity catalog parses"))
}

pub fn verify_operator_identity(id: &str, params: &ParameterMap, degree: usize) -> Result<VerificationReport> {
    identity_catalog()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))?
        .verify(params, degree)
}
