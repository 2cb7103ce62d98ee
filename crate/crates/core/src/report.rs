//! Pass/fail records shared by the ring checks and the sequence verifier.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotChecked,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotChecked => "not checked",
        })
    }
}

/// A named property check with an optional counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn not_checked(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::NotChecked,
            detail: detail.into(),
            witness: None,
        }
    }

    /// `Pass` when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, detail: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::from_bool(witness.is_none()),
            detail: detail.into(),
            witness,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub name: String,
    pub size: usize,
}

/// Exactness at one node: the fiber of the outgoing map over the base point
/// against the image of the incoming map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionCheck {
    pub position: usize,
    pub node: String,
    pub fiber_size: usize,
    pub image_size: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub sequence: String,
    pub instance: String,
    pub nodes: Vec<Node>,
    pub checks: Vec<PositionCheck>,
    /// Side conditions (homomorphism properties, cross-checks between routes).
    pub properties: Vec<Check>,
}

impl ExactnessReport {
    pub fn new(sequence: impl Into<String>, instance: impl Into<String>) -> Self {
        ExactnessReport {
            sequence: sequence.into(),
            instance: instance.into(),
            nodes: Vec::new(),
            checks: Vec::new(),
            properties: Vec::new(),
        }
    }

    pub fn node(&mut self, name: impl Into<String>, size: usize) {
        self.nodes.push(Node { name: name.into(), size });
    }

    /// Records exactness at `node` by comparing two sets of element keys.
    pub fn exactness<K: Ord + fmt::Debug>(
        &mut self,
        node: impl Into<String>,
        fiber: &std::collections::BTreeSet<K>,
        image: &std::collections::BTreeSet<K>,
    ) {
        let witness = fiber
            .symmetric_difference(image)
            .next()
            .map(|k| {
                if fiber.contains(k) {
                    format!("{k:?} lies in the fiber but not in the image")
                } else {
                    format!("{k:?} lies in the image but not in the fiber")
                }
            });
        self.checks.push(PositionCheck {
            position: self.checks.len(),
            node: node.into(),
            fiber_size: fiber.len(),
            image_size: image.len(),
            status: Status::from_bool(witness.is_none()),
            witness,
        });
    }

    pub fn not_checked(&mut self, node: impl Into<String>) {
        self.checks.push(PositionCheck {
            position: self.checks.len(),
            node: node.into(),
            fiber_size: 0,
            image_size: 0,
            status: Status::NotChecked,
            witness: None,
        });
    }

    pub fn property(&mut self, check: Check) {
        self.properties.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
            && self.properties.iter().all(|c| !c.failed())
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| c.status == Status::Fail)
            .map(|c| format!("{} at {}: {}", self.sequence, c.node, c.witness.clone().unwrap_or_default()))
            .or_else(|| {
                self.properties.iter().find(|c| c.failed()).map(|c| {
                    format!("{}: {}: {}", self.sequence, c.name, c.witness.clone().unwrap_or_default())
                })
            })
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.sequence, self.instance)?;
        let nodes: Vec<String> = self.nodes.iter().map(|n| format!("{} ({})", n.name, n.size)).collect();
        writeln!(f, "  {}", nodes.join(" -> "))?;
        for c in &self.checks {
            write!(
                f,
                "  exact at {:<16} fiber {:>5}  image {:>5}  {}",
                c.node, c.fiber_size, c.image_size, c.status
            )?;
            if let Some(w) = &c.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        for p in &self.properties {
            write!(f, "  {:<48} {}", p.name, p.status)?;
            if !p.detail.is_empty() {
                write!(f, "  {}", p.detail)?;
            }
            if let Some(w) = &p.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
