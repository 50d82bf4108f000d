//! JSON group descriptions.
//!
//! ```json
//! {"family": "quaternion", "params": {"order": 16}}
//! {"family": "direct_product", "params": {"factors": [{"family": "dihedral", "params": {"order": 8}},
//!                                                     {"family": "cyclic", "params": {"order": 2}}]}}
//! {"family": "inverting_extension", "params": {"base": {...}, "square_element": "(a^2,1)"}}
//! {"table": [[0, 1], [1, 0]], "labels": ["1", "x"]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{
    make_cyclic, make_dihedral, make_direct_product, make_inverting_extension, make_quaternion, AxiomViolation,
    GroupError, GroupTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupSpecError {
    #[error("malformed group spec: {0}")]
    Parse(String),
    #[error("group axiom violated: {0}")]
    GroupAxiomViolation(AxiomViolation),
    #[error(transparent)]
    Group(GroupError),
}

impl From<GroupError> for GroupSpecError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::AxiomViolation(v) => GroupSpecError::GroupAxiomViolation(v),
            other => GroupSpecError::Group(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Family {
        family: Family,
        #[serde(default)]
        params: Params,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Dihedral,
    Quaternion,
    DirectProduct,
    InvertingExtension,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<GroupSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<GroupSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_element: Option<String>,
}

fn missing(family: &str, field: &str) -> GroupSpecError {
    GroupSpecError::Parse(format!("{family} needs params.{field}"))
}

impl GroupSpec {
    pub fn family(family: Family, order: usize) -> Self {
        GroupSpec::Family { family, params: Params { order: Some(order), ..Params::default() } }
    }

    pub fn build(&self) -> Result<GroupTable, GroupSpecError> {
        match self {
            GroupSpec::Table { table, labels } => Ok(GroupTable::from_table(table, labels.clone())?),
            GroupSpec::Family { family, params } => {
                let order = || params.order.ok_or_else(|| missing("family", "order"));
                let g = match family {
                    Family::Cyclic => make_cyclic(order()?)?,
                    Family::Dihedral => make_dihedral(order()?)?,
                    Family::Quaternion => make_quaternion(order()?)?,
                    Family::DirectProduct => {
                        let factors = params.factors.as_ref().ok_or_else(|| missing("direct_product", "factors"))?;
                        let [f1, f2] = factors.as_slice() else {
                            return Err(GroupSpecError::Parse("direct_product needs exactly two factors".into()));
                        };
                        let (g1, g2) = (f1.build()?, f2.build()?);
                        if g1.order() * g2.order() > crate::group::MAX_ORDER {
                            return Err(GroupError::InvalidOrder(g1.order() * g2.order()).into());
                        }
                        make_direct_product(&g1, &g2)?
                    }
                    Family::InvertingExtension => {
                        let base = params.base.as_ref().ok_or_else(|| missing("inverting_extension", "base"))?;
                        let base = base.build()?;
                        if base.order() * 2 > crate::group::MAX_ORDER {
                            return Err(GroupError::InvalidOrder(base.order() * 2).into());
                        }
                        let label = params
                            .square_element
                            .as_deref()
                            .ok_or_else(|| missing("inverting_extension", "square_element"))?;
                        let t = base
                            .index_of(label)
                            .ok_or_else(|| GroupSpecError::Parse(format!("unknown element {label:?} in base")))?;
                        make_inverting_extension(&base, t)?
                    }
                };
                Ok(g)
            }
        }
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, GroupSpecError> {
    serde_json::from_str(text).map_err(|e| GroupSpecError::Parse(e.to_string()))
}

/// Parses and builds a group from its JSON description.
pub fn parse_group_spec(text: &str) -> Result<GroupTable, GroupSpecError> {
    parse_spec(text)?.build()
}
