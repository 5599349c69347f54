use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{parse_rational, Matrix, Rational};
use crate::module_theory::{AdjointModule, ContragredientModule, FockModule, VoaModule};
use crate::voa_core::{CurrentVOA, LieAlgebraData, VertexAlgebra};

/// Degree used when neither the config nor the caller fixes one.
pub const DEFAULT_MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieConfig {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub form: Vec<Vec<String>>,
    #[serde(default)]
    pub h_dual: Option<String>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

/// Algebra config file contents.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "algebra", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraConfig {
    Current {
        lie: LieConfig,
        level: String,
        #[serde(default)]
        max_degree: Option<usize>,
    },
    Heisenberg {
        rank: usize,
        #[serde(default)]
        max_degree: Option<usize>,
    },
}

fn rational(s: &str, at: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::Parse(format!("{at}: {e}")))
}

impl AlgebraConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra config: {e}")))
    }

    pub fn max_degree(&self) -> Option<usize> {
        match self {
            AlgebraConfig::Current { max_degree, .. } | AlgebraConfig::Heisenberg { max_degree, .. } => *max_degree,
        }
    }

    pub fn lie_data(&self) -> Result<LieAlgebraData> {
        match self {
            AlgebraConfig::Heisenberg { rank, .. } => {
                if *rank == 0 {
                    return Err(Error::Parse("algebra config: rank must be positive".into()));
                }
                Ok(LieAlgebraData::abelian(*rank))
            }
            AlgebraConfig::Current { lie, .. } => {
                let brackets = lie
                    .brackets
                    .iter()
                    .enumerate()
                    .map(|(n, (i, j, k, c))| Ok((*i, *j, *k, rational(c, &format!("lie.brackets[{n}]"))?)))
                    .collect::<Result<Vec<_>>>()?;
                let rows = lie
                    .form
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter().enumerate().map(|(j, c)| rational(c, &format!("lie.form[{i}][{j}]"))).collect()
                    })
                    .collect::<Result<Vec<Vec<Rational>>>>()?;
                let form = Matrix::from_rows(rows).map_err(|e| Error::Parse(format!("lie.form: {e}")))?;
                let h_dual = lie.h_dual.as_deref().map(|s| rational(s, "lie.h_dual")).transpose()?;
                LieAlgebraData::new(lie.dim, &brackets, form, h_dual, lie.names.clone())
            }
        }
    }

    pub fn level(&self) -> Result<Rational> {
        match self {
            AlgebraConfig::Heisenberg { .. } => Ok(Rational::from_integer(1.into())),
            AlgebraConfig::Current { level, .. } => rational(level, "level"),
        }
    }

    /// Builds the truncated VOA; `max_degree` overrides the config value.
    pub fn build(&self, max_degree: Option<usize>) -> Result<Arc<CurrentVOA>> {
        let n = max_degree.or(self.max_degree()).unwrap_or(DEFAULT_MAX_DEGREE);
        Ok(Arc::new(CurrentVOA::new(self.lie_data()?, self.level()?, n)?))
    }
}

/// CLI module descriptor: `adjoint`, `coadjoint` or `fock:λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Adjoint,
    Coadjoint,
    Fock(Rational),
}

impl std::str::FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjoint" => Ok(ModuleSpec::Adjoint),
            "coadjoint" => Ok(ModuleSpec::Coadjoint),
            _ => match s.strip_prefix("fock:") {
                Some(l) => Ok(ModuleSpec::Fock(rational(l, "module descriptor")?)),
                None => Err(Error::Parse(format!("unknown module descriptor '{s}' (adjoint, coadjoint, fock:λ)"))),
            },
        }
    }
}

/// A built module with the handles needed to address its vectors.
#[derive(Clone)]
pub struct BuiltModule {
    pub spec: ModuleSpec,
    pub algebra: Arc<CurrentVOA>,
    pub module: Arc<dyn VoaModule>,
    pub(crate) fock: Option<Arc<FockModule>>,
}

impl ModuleSpec {
    pub fn build(&self, v: &Arc<CurrentVOA>) -> Result<BuiltModule> {
        let dynv: Arc<dyn VertexAlgebra> = v.clone();
        let adjoint = || -> Arc<dyn VoaModule> { Arc::new(AdjointModule::new(dynv.clone())) };
        let (module, fock): (Arc<dyn VoaModule>, _) = match self {
            ModuleSpec::Adjoint => (adjoint(), None),
            ModuleSpec::Coadjoint => (Arc::new(ContragredientModule::new(adjoint())?), None),
            ModuleSpec::Fock(l) => {
                let f = Arc::new(FockModule::new(v.clone(), l.clone())?);
                (f.clone(), Some(f))
            }
        };
        Ok(BuiltModule { spec: self.clone(), algebra: v.clone(), module, fock })
    }
}
