//! Structural specifications and the switch mechanism that turns them into
//! multi-regime models.
//!
//! Every target `T` is emitted as its intention column. A child reading the
//! received value of `T` sees the intention while `F(T)` is idle and the set
//! value otherwise. Received copies are never emitted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::model::{full_product, NORMALIZATION_TOL};
use crate::rng::Rng;
use crate::table::for_each_point;
use crate::{Error, IndicatorState, MultiRegimeModel, Result, VariableDecl};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParentReading {
    /// The value after the switch: the set value when intervened on.
    #[default]
    Received,
    /// The intention, whatever the indicator says.
    Intention,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentRef {
    pub name: String,
    #[serde(default)]
    pub reads: ParentReading,
}

impl ParentRef {
    pub fn received(name: &str) -> Self {
        ParentRef {
            name: name.to_string(),
            reads: ParentReading::Received,
        }
    }

    pub fn intention(name: &str) -> Self {
        ParentRef {
            name: name.to_string(),
            reads: ParentReading::Intention,
        }
    }
}

/// Conditional table of one variable. Rows follow the parent list
/// (row-major, last parent fastest); each row has one entry per value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mechanism {
    pub variable: String,
    pub parents: Vec<ParentRef>,
    pub table: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuralSpec {
    pub variables: Vec<VariableDecl>,
    pub targets: Vec<String>,
    /// Topological order over all variables.
    pub order: Vec<String>,
    pub mechanisms: Vec<Mechanism>,
}

/// Resolved form used by the generator.
struct Compiled {
    cards: Vec<usize>,
    /// Per variable: `(parent index, reads received)`.
    parents: Vec<Vec<(usize, bool)>>,
    tables: Vec<Vec<f64>>,
    /// Target position per variable, if a target.
    target_pos: Vec<Option<usize>>,
}

impl StructuralSpec {
    fn var(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown variable `{name}`")))
    }

    fn compile(&self) -> Result<Compiled> {
        let n = self.variables.len();
        let invalid = |m: String| Err(Error::InvalidSpec(m));
        for (i, v) in self.variables.iter().enumerate() {
            if v.card() < 2 {
                return invalid(format!("`{}` needs at least two values", v.name));
            }
            if self.variables[..i].iter().any(|u| u.name == v.name) {
                return invalid(format!("`{}` declared twice", v.name));
            }
        }
        let mut target_pos = vec![None; n];
        let mut target_vars = Vec::new();
        for t in &self.targets {
            let v = self.var(t)?;
            if target_vars.contains(&v) {
                return invalid(format!("target `{t}` listed twice"));
            }
            target_vars.push(v);
        }
        target_vars.sort_unstable();
        for (p, &v) in target_vars.iter().enumerate() {
            target_pos[v] = Some(p);
        }

        let mut rank = vec![usize::MAX; n];
        if self.order.len() != n {
            return invalid("order must list every variable exactly once".into());
        }
        for (k, name) in self.order.iter().enumerate() {
            let v = self.var(name)?;
            if rank[v] != usize::MAX {
                return invalid(format!("`{name}` appears twice in the order"));
            }
            rank[v] = k;
        }

        let cards: Vec<usize> = self.variables.iter().map(VariableDecl::card).collect();
        let mut parents = vec![None; n];
        let mut tables = vec![Vec::new(); n];
        for m in &self.mechanisms {
            let v = self.var(&m.variable)?;
            if parents[v].is_some() {
                return invalid(format!("two mechanisms for `{}`", m.variable));
            }
            let mut ps = Vec::with_capacity(m.parents.len());
            for p in &m.parents {
                let u = self.var(&p.name)?;
                if rank[u] >= rank[v] {
                    return invalid(format!(
                        "parent `{}` of `{}` does not precede it in the order",
                        p.name, m.variable
                    ));
                }
                if ps.iter().any(|&(w, _)| w == u) {
                    return invalid(format!("`{}` lists parent `{}` twice", m.variable, p.name));
                }
                let received = p.reads == ParentReading::Received;
                if !received && target_pos[u].is_none() {
                    return invalid(format!(
                        "`{}` reads the intention of `{}`, which is not a target",
                        m.variable, p.name
                    ));
                }
                ps.push((u, received));
            }
            let rows: usize = ps.iter().map(|&(u, _)| cards[u]).product();
            if m.table.len() != rows * cards[v] {
                return invalid(format!(
                    "table of `{}` has {} entries, expected {}",
                    m.variable,
                    m.table.len(),
                    rows * cards[v]
                ));
            }
            for (r, row) in m.table.chunks(cards[v]).enumerate() {
                if row.iter().any(|&p| p.is_nan() || p < 0.0) {
                    return invalid(format!("row {r} of `{}` has a negative entry", m.variable));
                }
                let s: f64 = row.iter().sum();
                if (s - 1.0).abs() > NORMALIZATION_TOL {
                    return invalid(format!("row {r} of `{}` sums to {s}", m.variable));
                }
            }
            parents[v] = Some(ps);
            tables[v] = m.table.clone();
        }
        let parents = parents
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| Error::InvalidSpec(format!("no mechanism for `{}`", self.variables[v].name))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Compiled {
            cards,
            parents,
            tables,
            target_pos,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.compile().map(|_| ())
    }

    /// Parents of `name` in the spec, in listed order.
    pub fn parents_of(&self, name: &str) -> Option<&[ParentRef]> {
        self.mechanisms
            .iter()
            .find(|m| m.variable == name)
            .map(|m| m.parents.as_slice())
    }
}

/// Expands a spec into one regime per point of the full indicator product.
pub fn generate_structural_model(spec: &StructuralSpec) -> Result<MultiRegimeModel> {
    let c = spec.compile()?;
    let targets: Vec<&str> = spec.targets.iter().map(String::as_str).collect();
    let mut model = MultiRegimeModel::new(spec.variables.clone(), &targets)?;
    let target_cards: Vec<usize> = model.targets().iter().map(|&t| c.cards[t]).collect();
    for regime in full_product(&target_cards) {
        let mut probs = Vec::with_capacity(model.joint_size());
        for_each_point(&c.cards, |x| {
            let mut p = 1.0;
            for (v, ps) in c.parents.iter().enumerate() {
                let row = ps.iter().fold(0, |acc, &(u, received)| {
                    let mut val = x[u];
                    if received {
                        if let Some(pos) = c.target_pos[u] {
                            if let IndicatorState::Set(s) = regime.0[pos] {
                                val = s;
                            }
                        }
                    }
                    acc * c.cards[u] + val
                });
                p *= c.tables[v][row * c.cards[v] + x[v]];
            }
            probs.push(p);
        });
        model.push_regime(regime, probs);
    }
    Ok(model)
}

/// T fair coin, target; Y binary with `P(Y=1 | received r) = 0.2 + 0.6 r`.
pub fn m_ty_spec() -> StructuralSpec {
    StructuralSpec {
        variables: vec![VariableDecl::numeric("T", 2), VariableDecl::numeric("Y", 2)],
        targets: vec!["T".into()],
        order: vec!["T".into(), "Y".into()],
        mechanisms: vec![
            Mechanism {
                variable: "T".into(),
                parents: vec![],
                table: vec![0.5, 0.5],
            },
            Mechanism {
                variable: "Y".into(),
                parents: vec![ParentRef::received("T")],
                table: vec![0.8, 0.2, 0.2, 0.8],
            },
        ],
    }
}

/// Fills every mechanism of a parent structure with random positive rows.
/// `parents[v]` lists parent variable indices; all parents read received
/// values.
pub fn random_tables(
    variables: &[VariableDecl],
    targets: &[String],
    order: &[String],
    parents: &[Vec<usize>],
    rng: &mut Rng,
) -> StructuralSpec {
    let mechanisms = variables
        .iter()
        .zip(parents)
        .map(|(v, ps)| {
            let rows: usize = ps.iter().map(|&u| variables[u].card()).product();
            let table = (0..rows).flat_map(|_| rng.distribution(v.card())).collect();
            Mechanism {
                variable: v.name.clone(),
                parents: ps.iter().map(|&u| ParentRef::received(&variables[u].name)).collect(),
                table,
            }
        })
        .collect();
    StructuralSpec {
        variables: variables.to_vec(),
        targets: targets.to_vec(),
        order: order.to_vec(),
        mechanisms,
    }
}
