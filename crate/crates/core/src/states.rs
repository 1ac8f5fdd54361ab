//! Target states whose geometric entanglement can be evaluated, behind a
//! common trait and looked up by name.
//!
//! Built-in names:
//!
//! | name                | state                                            |
//! |---------------------|--------------------------------------------------|
//! | `half`              | lowest even-parity level `Psi_1/2`               |
//! | `zero`              | lowest odd-parity level `Psi_0`                  |
//! | `ground`            | whichever of the two is lower at `(r, h, n)`     |
//! | `superposition:<t>` | `cos t Psi_1/2 + sin t Psi_0`, `t` in radians    |

use std::collections::BTreeMap;
use std::fmt;

use crate::entangle::ground_sector;
use crate::error::{Error, Result};
use crate::model::{ModelPoint, Sector};
use crate::overlap::{AnsatzAngle, MixAngle, OverlapKernel, SuperpositionKernel};
use crate::signed_log::SignedLog;

/// A concrete state at a given `(r, h, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSelector {
    Sector(Sector),
    Superposition(MixAngle),
}

impl StateSelector {
    pub fn evaluator(&self, p: &ModelPoint, n: usize) -> Result<OverlapEvaluator> {
        Ok(match *self {
            StateSelector::Sector(s) => OverlapEvaluator::Sector(OverlapKernel::new(p, n, s)?),
            StateSelector::Superposition(mix) => {
                OverlapEvaluator::Superposition(SuperpositionKernel::new(p, n, mix)?)
            }
        })
    }
}

impl fmt::Display for StateSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSelector::Sector(s) => f.write_str(s.label()),
            StateSelector::Superposition(mix) => write!(f, "superposition:{}", mix.value()),
        }
    }
}

/// Overlap `xi -> <Psi|Phi(xi)>` for a resolved state.
#[derive(Debug, Clone)]
pub enum OverlapEvaluator {
    Sector(OverlapKernel),
    Superposition(SuperpositionKernel),
}

impl OverlapEvaluator {
    pub fn eval(&self, xi: AnsatzAngle) -> SignedLog {
        match self {
            OverlapEvaluator::Sector(k) => k.eval(xi),
            OverlapEvaluator::Superposition(k) => k.eval(xi),
        }
    }
}

/// A family member of target states.
pub trait TargetState: Send + Sync + fmt::Debug {
    /// Name under which the state is registered, including any parameter.
    fn name(&self) -> String;

    /// The concrete state this target denotes at `(p, n)`.
    fn resolve(&self, p: &ModelPoint, n: usize) -> Result<StateSelector>;
}

#[derive(Debug, Clone, Copy)]
pub struct SectorState(pub Sector);

impl TargetState for SectorState {
    fn name(&self) -> String {
        self.0.label().to_string()
    }

    fn resolve(&self, _: &ModelPoint, _: usize) -> Result<StateSelector> {
        Ok(StateSelector::Sector(self.0))
    }
}

/// The lower of the two sector states; exact ties resolve to `Half`.
#[derive(Debug, Clone, Copy)]
pub struct GroundState;

impl TargetState for GroundState {
    fn name(&self) -> String {
        "ground".into()
    }

    fn resolve(&self, p: &ModelPoint, n: usize) -> Result<StateSelector> {
        Ok(StateSelector::Sector(ground_sector(p, n)?.sector))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Superposition(pub MixAngle);

impl TargetState for Superposition {
    fn name(&self) -> String {
        format!("superposition:{}", self.0.value())
    }

    fn resolve(&self, _: &ModelPoint, _: usize) -> Result<StateSelector> {
        Ok(StateSelector::Superposition(self.0))
    }
}

type Factory = Box<dyn Fn(Option<&str>) -> Result<Box<dyn TargetState>> + Send + Sync>;

/// Name-to-constructor table for [`TargetState`] implementations.
pub struct StateRegistry {
    factories: BTreeMap<String, Factory>,
}

impl StateRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// Registry holding `half`, `zero`, `ground` and `superposition`.
    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register("half", |arg| {
            no_argument("half", arg)?;
            Ok(Box::new(SectorState(Sector::Half)))
        });
        reg.register("zero", |arg| {
            no_argument("zero", arg)?;
            Ok(Box::new(SectorState(Sector::Zero)))
        });
        reg.register("ground", |arg| {
            no_argument("ground", arg)?;
            Ok(Box::new(GroundState))
        });
        reg.register("superposition", |arg| {
            let theta = arg
                .ok_or_else(|| Error::UnknownState("superposition needs an angle".into()))?
                .parse::<f64>()
                .map_err(|_| Error::UnknownState(format!("bad angle {arg:?}")))?;
            Ok(Box::new(Superposition(MixAngle::new(theta)?)))
        });
        reg
    }

    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(Option<&str>) -> Result<Box<dyn TargetState>> + Send + Sync + 'static,
    {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    /// Build a state from `name` or `name:argument`.
    pub fn create(&self, spec: &str) -> Result<Box<dyn TargetState>> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let factory = self
            .factories
            .get(name.trim())
            .ok_or_else(|| Error::UnknownState(spec.to_string()))?;
        factory(arg.map(str::trim))
    }
}

impl Default for StateRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl fmt::Debug for StateRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

fn no_argument(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::UnknownState(format!("{name} takes no argument, got {a:?}"))),
    }
}
