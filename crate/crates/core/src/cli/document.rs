use serde::{Deserialize, Serialize};

use super::CliError;
use crate::correspondence::FiniteMap;
use crate::groups::{generate_group, FiniteGroup, Perm};
use crate::motive::{EquivariantModel, Motive, Term};
use crate::stack::{Automorphism, GerbeDatum};

/// The single JSON document every command reads.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default)]
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gerbe: Option<GerbeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveDoc>,
    /// Second factor for the Kunneth check; defaults to the document's group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kunneth_group: Option<GroupDoc>,
    /// Cover for the splitting check; defaults to the orbit map of point 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GroupDoc {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub enum ModelDoc {
    Hset(HSetDoc),
    Cells(CellsDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HSetDoc {
    pub size: usize,
    pub generator_images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CellDoc {
    pub dim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CellsDoc {
    pub cells: Vec<CellDoc>,
    pub generator_images: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_locus: Option<FixedLocusDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FixedCellDoc {
    pub dim: u32,
    /// Generators of the stabilizer, as permutations of the group's points.
    pub stabilizer: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FixedLocusDoc {
    pub cells: Vec<FixedCellDoc>,
    pub generator_images: Vec<Vec<usize>>,
    /// Generators of the subgroup acting trivially on the whole model.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernel: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MotiveDoc {
    pub label: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GerbeDoc {
    /// One automorphism per monodromy generator, as the images of the
    /// group's generators.
    pub monodromy: Vec<Vec<Vec<usize>>>,
    pub base: MotiveDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CurveDoc {
    pub genus: u32,
    pub orders: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CoverDoc {
    pub images: Vec<usize>,
    pub target_size: usize,
}

fn invalid(field: impl Into<String>, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{}: {msg}", field.into()))
}

fn perm(field: &str, images: &[usize], degree: usize) -> Result<Perm, CliError> {
    if images.len() != degree {
        return Err(invalid(
            field,
            format!("has {} entries, expected {degree}", images.len()),
        ));
    }
    Perm::new(images.to_vec()).map_err(|e| invalid(field, e))
}

fn perms(field: &str, list: &[Vec<usize>], degree: usize) -> Result<Vec<Perm>, CliError> {
    list.iter()
        .enumerate()
        .map(|(i, v)| perm(&format!("{field}[{i}]"), v, degree))
        .collect()
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }

    pub fn build(&self, field: &str) -> Result<FiniteGroup, CliError> {
        let gens = perms(
            &format!("{field}.generators"),
            &self.generators,
            self.degree,
        )?;
        generate_group(self.degree, gens).map_err(|e| invalid(field, e))
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn group(&self) -> Result<FiniteGroup, CliError> {
        self.group
            .as_ref()
            .ok_or_else(|| invalid("group", "missing"))?
            .build("group")
    }

    pub fn kunneth_group(&self) -> Result<FiniteGroup, CliError> {
        match &self.kunneth_group {
            Some(g) => g.build("kunnethGroup"),
            None => self.group(),
        }
    }

    /// The model, or the point with trivial action when absent.
    pub fn model(&self, group: &FiniteGroup) -> Result<EquivariantModel, CliError> {
        let n_gens = group.generators().len();
        let check_count = |field: &str, len: usize| {
            if len == n_gens {
                Ok(())
            } else {
                Err(invalid(
                    field,
                    format!("has {len} entries, expected one per generator ({n_gens})"),
                ))
            }
        };
        match &self.model {
            None => Ok(EquivariantModel::point(group.clone())),
            Some(ModelDoc::Hset(h)) => {
                check_count("model.hset.generatorImages", h.generator_images.len())?;
                let imgs = perms("model.hset.generatorImages", &h.generator_images, h.size)?;
                EquivariantModel::hset(group.clone(), h.size, imgs)
                    .map_err(|e| invalid("model.hset", e))
            }
            Some(ModelDoc::Cells(c)) => {
                check_count("model.cells.generatorImages", c.generator_images.len())?;
                let imgs = perms(
                    "model.cells.generatorImages",
                    &c.generator_images,
                    c.cells.len(),
                )?;
                let dims = c.cells.iter().map(|x| x.dim).collect();
                let x = EquivariantModel::cells(group.clone(), dims, imgs)
                    .map_err(|e| invalid("model.cells", e))?;
                let Some(fl) = &c.fixed_locus else {
                    return Ok(x);
                };
                let f = "model.cells.fixedLocus";
                check_count(&format!("{f}.generatorImages"), fl.generator_images.len())?;
                let imgs = perms(
                    &format!("{f}.generatorImages"),
                    &fl.generator_images,
                    fl.cells.len(),
                )?;
                let stabs = fl
                    .cells
                    .iter()
                    .enumerate()
                    .map(|(i, cell)| {
                        perms(
                            &format!("{f}.cells[{i}].stabilizer"),
                            &cell.stabilizer,
                            group.degree(),
                        )
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let kernel = perms(&format!("{f}.kernel"), &fl.kernel, group.degree())?;
                let dims = fl.cells.iter().map(|x| x.dim).collect();
                x.with_fixed_locus(dims, stabs, kernel, imgs)
                    .map_err(|e| invalid(f, e))
            }
        }
    }

    pub fn gerbe(&self, group: &FiniteGroup) -> Result<GerbeDatum, CliError> {
        let g = self
            .gerbe
            .as_ref()
            .ok_or_else(|| invalid("gerbe", "missing"))?;
        let monodromy = g
            .monodromy
            .iter()
            .enumerate()
            .map(|(i, imgs)| {
                let field = format!("gerbe.monodromy[{i}]");
                let ps = perms(&field, imgs, group.degree())?;
                Automorphism::new(group, ps).map_err(|e| invalid(&field, e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if g.base.label.is_empty() {
            return Err(invalid("gerbe.base.label", "is empty"));
        }
        for (i, t) in g.base.terms.iter().enumerate() {
            t.atom
                .validate()
                .map_err(|e| invalid(format!("gerbe.base.terms[{i}].atom"), e))?;
        }
        Ok(GerbeDatum {
            group: group.clone(),
            monodromy,
            base: Motive::from_terms(g.base.terms.iter().cloned()),
            base_label: g.base.label.clone(),
        })
    }

    pub fn cover(&self) -> Result<Option<FiniteMap>, CliError> {
        self.cover
            .as_ref()
            .map(|c| {
                FiniteMap::new(c.images.clone(), c.target_size).map_err(|e| invalid("cover", e))
            })
            .transpose()
    }
}
