use crate::domain::{DomainSet, VarId};
use crate::error::{Error, Result};
use crate::propagators::Constraint;
use crate::symmetry::SymmetrySpec;

/// Variables, their initial domains, posted constraints and declared
/// symmetries. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    name: String,
    initial_domains: Vec<DomainSet>,
    constraints: Vec<Constraint>,
    symmetry: SymmetrySpec,
}

impl Model {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vars(&self) -> usize {
        self.initial_domains.len()
    }

    pub fn initial_domains(&self) -> &[DomainSet] {
        &self.initial_domains
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn symmetry(&self) -> &SymmetrySpec {
        &self.symmetry
    }

    /// Whether a full assignment lies in the initial domains and satisfies
    /// every constraint.
    pub fn is_solution(&self, values: &[usize]) -> bool {
        values.len() == self.num_vars()
            && values
                .iter()
                .zip(&self.initial_domains)
                .all(|(v, d)| d.contains(*v))
            && self.constraints.iter().all(|c| c.is_satisfied(values))
    }

    /// A copy with extra constraints appended.
    pub fn with_constraints(&self, extra: impl IntoIterator<Item = Constraint>) -> Result<Model> {
        let mut b = ModelBuilder::from_model(self);
        for c in extra {
            b.post(c);
        }
        b.build()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ModelBuilder {
    name: String,
    domains: Vec<DomainSet>,
    constraints: Vec<Constraint>,
    symmetry: Option<SymmetrySpec>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_model(model: &Model) -> Self {
        Self {
            name: model.name.clone(),
            domains: model.initial_domains.clone(),
            constraints: model.constraints.clone(),
            symmetry: Some(model.symmetry.clone()),
        }
    }

    pub fn name(&mut self, name: impl Into<String>) -> &mut Self {
        self.name = name.into();
        self
    }

    pub fn add_var(&mut self, domain: DomainSet) -> VarId {
        self.domains.push(domain);
        VarId(self.domains.len() - 1)
    }

    pub fn add_vars(&mut self, count: usize, domain: DomainSet) -> Vec<VarId> {
        (0..count).map(|_| self.add_var(domain.clone())).collect()
    }

    pub fn post(&mut self, c: Constraint) -> &mut Self {
        self.constraints.push(c);
        self
    }

    pub fn symmetry(&mut self, spec: SymmetrySpec) -> &mut Self {
        self.symmetry = Some(spec);
        self
    }

    /// Validates variable references and that every declared symmetry maps
    /// initial domains onto initial domains.
    pub fn build(&self) -> Result<Model> {
        let n = self.domains.len();
        if let Some(i) = self.domains.iter().position(DomainSet::is_empty) {
            return Err(Error::InvalidModel(format!(
                "variable x{i} has an empty domain"
            )));
        }
        for c in &self.constraints {
            c.validate(n)?;
        }
        let symmetry = self
            .symmetry
            .clone()
            .unwrap_or_else(|| SymmetrySpec::none((0..n).map(VarId).collect()));
        validate_symmetry(&symmetry, &self.domains)?;
        Ok(Model {
            name: self.name.clone(),
            initial_domains: self.domains.clone(),
            constraints: self.constraints.clone(),
            symmetry,
        })
    }
}

fn validate_symmetry(spec: &SymmetrySpec, domains: &[DomainSet]) -> Result<()> {
    if let Some(v) = spec.scope.iter().find(|v| v.0 >= domains.len()) {
        return Err(Error::InvalidModel(format!(
            "symmetry scope references unknown variable {v}"
        )));
    }
    let scope_doms: Vec<&DomainSet> = spec.scope.iter().map(|v| &domains[v.0]).collect();
    for sym in &spec.explicit {
        if sym.arity() != spec.scope.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.scope.len(),
                actual: sym.arity(),
            });
        }
        for (i, d) in scope_doms.iter().enumerate() {
            let image: DomainSet = d.iter().map(|v| sym.sigma().apply(v)).collect();
            if &image != scope_doms[sym.theta()[i]] {
                return Err(Error::InvalidModel(format!(
                    "symmetry {sym:?} does not preserve the domain of scope position {i}"
                )));
            }
        }
    }
    let mut seen = DomainSet::empty();
    for class in &spec.interchangeable {
        for &v in class {
            if !seen.insert(v) {
                return Err(Error::InvalidModel(format!(
                    "value {v} appears in more than one interchangeable class"
                )));
            }
        }
        for d in &scope_doms {
            let hits = class.iter().filter(|&&v| d.contains(v)).count();
            if hits != 0 && hits != class.len() {
                return Err(Error::InvalidModel(format!(
                    "interchangeable class {class:?} is split by a domain"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{ValuePermutation, VarValueSymmetry};

    #[test]
    fn rejects_unknown_variable() {
        let mut b = ModelBuilder::new();
        let x = b.add_var(DomainSet::range(0, 1));
        b.post(Constraint::NotEqual(x, VarId(5)));
        assert!(matches!(b.build(), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn rejects_domain_breaking_symmetry() {
        let mut b = ModelBuilder::new();
        let x = b.add_var(DomainSet::range(0, 1));
        let y = b.add_var(DomainSet::range(0, 2));
        b.symmetry(SymmetrySpec {
            scope: vec![x, y],
            explicit: vec![VarValueSymmetry::reversal(2)],
            interchangeable: vec![],
        });
        assert!(b.build().is_err());
    }

    #[test]
    fn accepts_inversion_on_uniform_domains() {
        let mut b = ModelBuilder::new();
        let xs = b.add_vars(3, DomainSet::range(0, 4));
        b.symmetry(SymmetrySpec {
            scope: xs,
            explicit: vec![VarValueSymmetry::value_only(
                3,
                ValuePermutation::inversion(4),
            )],
            interchangeable: vec![],
        });
        assert!(b.build().is_ok());
    }

    #[test]
    fn rejects_overlapping_classes() {
        let mut b = ModelBuilder::new();
        let xs = b.add_vars(2, DomainSet::range(0, 3));
        b.symmetry(SymmetrySpec {
            scope: xs,
            explicit: vec![],
            interchangeable: vec![vec![0, 1], vec![1, 2]],
        });
        assert!(b.build().is_err());
    }
}
