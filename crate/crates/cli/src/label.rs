use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use schurkit::closedforms::HookKind;
use schurkit::combinatorics::{is_p_hook, Partition};
use schurkit::polymod::{general_costandard, general_standard, simple_general, Module};
use schurkit::schuralg::Algebra;

/// `F0`, `S1`, `W2` name a hook with the given index; `S(2,1)` names an
/// arbitrary partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub kind: HookKind,
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Hook(usize),
    Part(Partition),
}

impl FromStr for Label {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('S') => HookKind::S,
            Some('F') => HookKind::F,
            Some('W') => HookKind::W,
            _ => bail!("label {s:?} must start with S, F or W"),
        };
        let rest = chars.as_str();
        let shape = if rest.starts_with('(') {
            if !rest.ends_with(')') {
                bail!("unbalanced parentheses in {s:?}");
            }
            Shape::Part(rest.parse::<Partition>()?)
        } else {
            Shape::Hook(rest.parse().map_err(|_| anyhow!("bad hook index in {s:?}"))?)
        };
        Ok(Label { kind, shape })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            HookKind::S => 'S',
            HookKind::F => 'F',
            HookKind::W => 'W',
        };
        match &self.shape {
            Shape::Hook(i) => write!(f, "{k}{i}"),
            Shape::Part(l) => write!(f, "{k}({l})"),
        }
    }
}

impl Label {
    /// The hook index, resolving partitions that happen to be p-hooks.
    pub fn hook_index(&self, p: Option<usize>) -> Option<usize> {
        match &self.shape {
            Shape::Hook(i) => Some(*i),
            Shape::Part(l) => p.and_then(|p| is_p_hook(l, p)),
        }
    }

    pub fn partition(&self, p: usize) -> Partition {
        match &self.shape {
            Shape::Hook(i) => Partition::hook(p, *i),
            Shape::Part(l) => l.clone(),
        }
    }

    pub fn module(&self, alg: &Arc<Algebra>, p: usize) -> Result<Module> {
        let l = self.partition(p);
        let m = match self.kind {
            HookKind::S => general_costandard(alg, &l)?,
            HookKind::F => simple_general(alg, &l)?,
            HookKind::W => general_standard(alg, &l)?,
        };
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_labels() {
        let l: Label = "F0".parse().unwrap();
        assert_eq!(l, Label { kind: HookKind::F, shape: Shape::Hook(0) });
        let l: Label = "S(2,1)".parse().unwrap();
        assert_eq!(l.to_string(), "S(2,1)");
        assert_eq!(l.hook_index(Some(3)), Some(1));
        assert!("X1".parse::<Label>().is_err());
        assert!("S(2,1".parse::<Label>().is_err());
        assert!("Wx".parse::<Label>().is_err());
    }
}
