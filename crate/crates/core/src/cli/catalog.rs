//! Named models reachable from the command line.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace, Vector};
use crate::liealg::{FilteredLieAlgebra, GradedLieAlgebra};
use crate::models::{
    abelian, bryant, contact_csp, free_nilpotent, heisenberg, mutation_triple, ode_algebra, parabolic_grading,
    skew_derivations, SimpleType,
};
use crate::normcond::{extend_by_derivations, ode_inner_product, subriemannian_inner_product, AdjointKind, InnerProduct};

/// Which codifferential the pipeline builds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodiffChoice {
    Kostant,
    Subriem,
    Ode,
    /// Loaded from a file by the caller.
    Given(Box<crate::normcond::Codifferential>),
    None,
}

impl CodiffChoice {
    pub fn name(&self) -> &'static str {
        match self {
            CodiffChoice::Kostant => "kostant",
            CodiffChoice::Subriem => "subriem",
            CodiffChoice::Ode => "ode",
            CodiffChoice::Given(_) => "file",
            CodiffChoice::None => "none",
        }
    }
}

/// One algebra the pipeline runs on.
#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub alg: FilteredLieAlgebra,
    /// Inner product natural to the model and the differential it is adjoint to.
    pub inner: Option<(InnerProduct, AdjointKind)>,
    pub n: Option<Vec<Vector>>,
    pub ntilde: Option<Vec<Vector>>,
}

impl Member {
    pub fn plain(name: impl Into<String>, alg: FilteredLieAlgebra) -> Member {
        Member {
            name: name.into(),
            alg,
            inner: None,
            n: None,
            ntilde: None,
        }
    }
}

/// A resolved target: the algebras and the default codifferential.
#[derive(Clone, Debug)]
pub struct Target {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub members: Vec<Member>,
    pub default_codiff: CodiffChoice,
    /// Members are expected to share their associated graded algebra.
    pub compare_graded: bool,
}

pub struct ModelInfo {
    pub name: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub summary: &'static str,
}

pub const MODELS: &[ModelInfo] = &[
    ModelInfo {
        name: "ode",
        params: &[("k", "3"), ("m", "1")],
        summary: "(sl(2) + gl(m)) x| V^m_k, the symbol algebra of systems of ODEs of order k+1",
    },
    ModelInfo {
        name: "parabolic",
        params: &[("type", "sl3"), ("crossed", "all")],
        summary: "sl(n), n <= 4, or sp4 graded by crossed simple roots (comma separated, 1-based)",
    },
    ModelInfo {
        name: "heisenberg",
        params: &[("d", "3")],
        summary: "Heisenberg algebra of dimension d plus its skew degree 0 derivations",
    },
    ModelInfo {
        name: "free",
        params: &[("g", "2"), ("s", "3")],
        summary: "free s-step nilpotent algebra on g generators plus its skew degree 0 derivations",
    },
    ModelInfo {
        name: "bryant",
        params: &[],
        summary: "R^3 + Lambda^2 R^3 plus its skew degree 0 derivations",
    },
    ModelInfo {
        name: "abelian",
        params: &[("n", "3")],
        summary: "R^n + so(n), the Euclidean pair",
    },
    ModelInfo {
        name: "contact_csp",
        params: &[("n", "4")],
        summary: "contact symbol of dimension n+1 plus csp(n)",
    },
    ModelInfo {
        name: "mutation_triple",
        params: &[("n", "2")],
        summary: "o(n+1), euc(n) and o(n,1), filtered by o(n)",
    },
];

fn lookup(name: &str) -> Result<&'static ModelInfo> {
    MODELS.iter().find(|m| m.name == name).ok_or_else(|| Error::Parse {
        field: "model".into(),
        message: format!(
            "unknown model '{name}' (known: {})",
            MODELS.iter().map(|m| m.name).collect::<Vec<_>>().join(", ")
        ),
    })
}

struct Params<'a> {
    values: BTreeMap<String, String>,
    info: &'a ModelInfo,
}

impl Params<'_> {
    fn get(&self, key: &str) -> &str {
        &self.values[key]
    }

    fn usize(&self, key: &str) -> Result<usize> {
        self.get(key).parse().map_err(|_| Error::Parse {
            field: format!("param {key}"),
            message: format!("'{}' is not a nonnegative integer", self.get(key)),
        })
    }

    fn listing(&self) -> Vec<(String, String)> {
        self.info
            .params
            .iter()
            .map(|(k, _)| (k.to_string(), self.values[*k].clone()))
            .collect()
    }
}

fn g0_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("A{i}")).collect()
}

fn subriemannian(name: String, m: &GradedLieAlgebra) -> Result<Member> {
    let so = skew_derivations(m);
    let b = Matrix::identity(m.indices_of_degree(-1).len());
    let (g, ip) = subriemannian_inner_product(m, &b, &so, g0_labels(so.dim()))?;
    Ok(Member {
        inner: Some((ip, AdjointKind::Graded)),
        ..Member::plain(name, FilteredLieAlgebra::from_graded(&g))
    })
}

fn with_g0(m: &GradedLieAlgebra, g0: &Subspace) -> Result<FilteredLieAlgebra> {
    let g = extend_by_derivations(m, g0, g0_labels(g0.dim()))?;
    Ok(FilteredLieAlgebra::from_graded(&g))
}

/// Builds a catalog model. Unknown parameter names are rejected.
pub fn build_model(name: &str, given: &[(String, String)]) -> Result<Target> {
    let info = lookup(name)?;
    let mut values: BTreeMap<String, String> = info.params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    for (k, v) in given {
        if !values.contains_key(k) {
            return Err(Error::Parse {
                field: format!("param {k}"),
                message: format!("model '{name}' has no parameter '{k}'"),
            });
        }
        values.insert(k.clone(), v.clone());
    }
    let p = Params { values, info };
    let mut target = Target {
        name: name.to_string(),
        params: p.listing(),
        members: Vec::new(),
        default_codiff: CodiffChoice::None,
        compare_graded: false,
    };
    match name {
        "ode" => {
            let (k, m) = (p.usize("k")?, p.usize("m")?);
            let alg = ode_algebra(k, m)?;
            let ip = ode_inner_product(k, m)?;
            target.members.push(Member {
                inner: Some((ip, AdjointKind::Horizontal)),
                ..Member::plain(format!("ode({k},{m})"), alg)
            });
            target.default_codiff = CodiffChoice::Ode;
        }
        "parabolic" => {
            let ty: SimpleType = p.get("type").parse()?;
            let crossed: Vec<usize> = if p.get("crossed") == "all" {
                (1..=ty.rank()).collect()
            } else {
                p.get("crossed")
                    .split(',')
                    .map(|s| {
                        s.trim().parse().map_err(|_| Error::Parse {
                            field: "param crossed".into(),
                            message: format!("'{s}' is not a root number"),
                        })
                    })
                    .collect::<Result<_>>()?
            };
            let g = parabolic_grading(ty, &crossed)?;
            let list: Vec<String> = crossed.iter().map(|c| c.to_string()).collect();
            target.members.push(Member::plain(
                format!("{}/[{}]", p.get("type"), list.join(",")),
                FilteredLieAlgebra::from_graded(&g),
            ));
            target.default_codiff = CodiffChoice::Kostant;
        }
        "heisenberg" => {
            let d = p.usize("d")?;
            target.members.push(subriemannian(format!("heisenberg({d})"), &heisenberg(d)?)?);
            target.default_codiff = CodiffChoice::Subriem;
        }
        "free" => {
            let (g, s) = (p.usize("g")?, p.usize("s")?);
            target.members.push(subriemannian(format!("free({g},{s})"), &free_nilpotent(g, s)?)?);
            target.default_codiff = CodiffChoice::Subriem;
        }
        "bryant" => {
            target.members.push(subriemannian("bryant".into(), &bryant())?);
            target.default_codiff = CodiffChoice::Subriem;
        }
        "abelian" => {
            let n = p.usize("n")?;
            target.members.push(subriemannian(format!("abelian({n})"), &abelian(n))?);
            target.default_codiff = CodiffChoice::Subriem;
        }
        "contact_csp" => {
            let n = p.usize("n")?;
            let (m, g0) = contact_csp(n)?;
            target.members.push(Member::plain(format!("contact_csp({n})"), with_g0(&m, &g0)?));
        }
        "mutation_triple" => {
            let n = p.usize("n")?;
            let [pos, flat, neg] = mutation_triple(n)?;
            target.members.push(Member::plain(format!("o({})", n + 1), pos));
            target.members.push(Member::plain(format!("euc({n})"), flat));
            target.members.push(Member::plain(format!("o({n},1)"), neg));
            target.compare_graded = true;
        }
        _ => unreachable!("lookup accepted an unlisted model"),
    }
    Ok(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_model_builds_with_defaults() {
        for info in MODELS {
            let t = build_model(info.name, &[]).unwrap();
            assert!(!t.members.is_empty(), "{}", info.name);
            for m in &t.members {
                assert!(m.alg.alg.check_jacobi(), "{}", m.name);
                assert!(m.alg.check_filtered(), "{}", m.name);
            }
        }
    }

    #[test]
    fn unknown_names_are_input_errors() {
        assert!(matches!(build_model("sl5", &[]), Err(Error::Parse { .. })));
        let bad = [("q".to_string(), "1".to_string())];
        assert!(matches!(build_model("ode", &bad), Err(Error::Parse { .. })));
        let bad = [("k".to_string(), "x".to_string())];
        assert!(matches!(build_model("ode", &bad), Err(Error::Parse { .. })));
    }
}
