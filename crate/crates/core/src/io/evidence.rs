//! JSON documents for countermodels. Field order is fixed by declaration
//! order, so equal values always serialize to equal bytes.

use serde::{Deserialize, Serialize};

use crate::algebra::{Assignment, LModel};
use crate::formula::Formula;
use crate::ipc::KripkeModel;

pub const KRIPKE_KIND: &str = "kripke-countermodel";
pub const LMODEL_KIND: &str = "l-countermodel";

/// A Kripke model whose root forces the premises and not the goal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeCountermodel {
    pub kind: String,
    pub premises: Vec<Formula>,
    pub goal: Formula,
    pub model: KripkeModel,
}

/// An L-model and assignment satisfying the premises and not the goal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LCountermodel {
    pub kind: String,
    pub premises: Vec<Formula>,
    pub goal: Formula,
    pub model: LModel,
    pub assignment: Assignment,
}

impl KripkeCountermodel {
    pub fn new(premises: Vec<Formula>, goal: Formula, model: KripkeModel) -> KripkeCountermodel {
        KripkeCountermodel {
            kind: KRIPKE_KIND.into(),
            premises,
            goal,
            model,
        }
    }

    /// Re-validates the model and the forcing claims.
    pub fn check(&self) -> Result<(), String> {
        self.model.validate().map_err(|e| e.to_string())?;
        let root = self.model.root();
        if let Some(f) = self
            .premises
            .iter()
            .chain([&self.goal])
            .find(|f| !f.is_propositional())
        {
            return Err(format!("{f} is not box-free"));
        }
        if let Some(p) = self.premises.iter().find(|p| !self.model.forces(root, p)) {
            return Err(format!("root does not force premise {p}"));
        }
        if self.model.forces(root, &self.goal) {
            return Err(format!("root forces the goal {}", self.goal));
        }
        Ok(())
    }
}

impl LCountermodel {
    pub fn new(
        premises: Vec<Formula>,
        goal: Formula,
        model: LModel,
        assignment: Assignment,
    ) -> LCountermodel {
        LCountermodel {
            kind: LMODEL_KIND.into(),
            premises,
            goal,
            model,
            assignment,
        }
    }

    /// Re-validates the model conditions and the satisfaction claims.
    pub fn check(&self) -> Result<(), String> {
        use crate::algebra::satisfies;
        self.model.validate().map_err(|e| e.to_string())?;
        for p in &self.premises {
            if !satisfies(&self.model, &self.assignment, p).map_err(|e| e.to_string())? {
                return Err(format!("premise {p} is not satisfied"));
            }
        }
        if satisfies(&self.model, &self.assignment, &self.goal).map_err(|e| e.to_string())? {
            return Err(format!("the goal {} is satisfied", self.goal));
        }
        Ok(())
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("evidence serializes");
    text.push('\n');
    text
}
