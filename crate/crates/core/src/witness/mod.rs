//! Witness operations `f ∈ Pol(R^{a,b}) ∖ Pol(ρ)` and the certificates that
//! carry them.
//!
//! Every builder re-checks its output with the preservation checker in
//! [`crate::algebra`]; nothing returned here is trusted from construction.

mod binary;
mod refute;
mod search;
mod unary;

pub use binary::{
    binary_template, central_refuter, equivalence_refuters, middle_element_refuter, reflexive_refuter,
    reflexive_refuter_least, template_cell_range, TemplateForm,
};
pub use refute::{equivalence_refuter, order_refuter, sigma_mismatch_refuter, unary_refuter};
pub use search::{family_search, SearchOutcome};
pub use unary::{
    complement_mapper, interval_preserving_unary, order_exception_witness, unary_image_bounded,
    unary_witness_properties, OrderException, UnaryWitnessProperties,
};

use serde::Serialize;

use crate::algebra::{find_violation, preserves, Counterexample, Operation, Relation};
use crate::clausal::binary_clausal;
use crate::error::{Error, Result};

/// An operation that preserves a clausal relation but not a target relation,
/// together with the violating columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub witness: Operation,
    pub target: Relation,
    pub clausal: Relation,
    pub preservation_check: bool,
    pub violation: Counterexample,
    pub construction: String,
}

impl WitnessCertificate {
    /// Builds a certificate from intended columns and verifies it.
    pub fn new(
        witness: Operation,
        clausal: Relation,
        target: Relation,
        columns: Vec<Vec<usize>>,
        construction: impl Into<String>,
    ) -> Result<Self> {
        let construction = construction.into();
        let image = witness.apply_componentwise(&columns)?;
        let cert = Self {
            preservation_check: preserves(&witness, &clausal)?,
            violation: Counterexample { columns, image },
            witness,
            target,
            clausal,
            construction,
        };
        cert.verified()
    }

    /// Builds a certificate from the least violating columns, if there are any.
    pub fn search(
        witness: Operation,
        clausal: Relation,
        target: Relation,
        construction: impl Into<String>,
    ) -> Result<Option<Self>> {
        let Some(violation) = find_violation(&witness, &target)? else {
            return Ok(None);
        };
        Self::new(witness, clausal, target, violation.columns, construction).map(Some)
    }

    fn verified(self) -> Result<Self> {
        if !self.preservation_check {
            return Err(Error::Verification(format!(
                "{}: witness does not preserve the clausal relation",
                self.construction
            )));
        }
        if !self.recheck() {
            return Err(Error::Verification(format!(
                "{}: columns {:?} do not refute the target",
                self.construction, self.violation.columns
            )));
        }
        Ok(self)
    }

    /// Recomputes every claim from scratch.
    pub fn recheck(&self) -> bool {
        preserves(&self.witness, &self.clausal).unwrap_or(false)
            && self.violation.is_genuine(&self.witness, &self.target)
            && !preserves(&self.witness, &self.target).unwrap_or(true)
    }
}

#[derive(Serialize)]
struct CertificateReport<'a> {
    clausal: &'a Relation,
    target: &'a Relation,
    witness: &'a Operation,
    violating_columns: &'a [Vec<usize>],
    image_tuple: &'a [usize],
    preservation_check: bool,
    construction: &'a str,
}

impl Serialize for WitnessCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateReport {
            clausal: &self.clausal,
            target: &self.target,
            witness: &self.witness,
            violating_columns: &self.violation.columns,
            image_tuple: &self.violation.image,
            preservation_check: self.preservation_check,
            construction: &self.construction,
        }
        .serialize(s)
    }
}

fn clausal_for(a: usize, b: usize, n: usize) -> Result<Relation> {
    binary_clausal(a, b, n)
}

/// Re-verifies a witness claimed to lie in `Pol(R^{a,b})`.
fn ensure_in_pol(f: &Operation, a: usize, b: usize, what: &str) -> Result<()> {
    if !preserves(f, &clausal_for(a, b, f.n())?)? {
        return Err(Error::Verification(format!("{what} does not preserve R^{{{a},{b}}}")));
    }
    Ok(())
}

fn check_ab(a: usize, b: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    for v in [a, b] {
        if v >= n {
            return Err(Error::ElementOutOfRange { value: v, n });
        }
    }
    Ok(())
}
