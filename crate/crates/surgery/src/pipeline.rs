use std::collections::BTreeMap;

use frontdga::augment::extend_augmentation;
use frontdga::disks::DiskConfig;
use frontdga::{Augmentation, Dga};
use num_bigint::BigInt;

use crate::error::{Result, SurgeryError};
use crate::legendrian::Legendrian;
use crate::ops::{connected_sum, reidemeister1, transport, Hint, KinkSide, Rewrite};

/// Augmentation values by generator name.
pub type NamedAugmentation = BTreeMap<String, BigInt>;

/// Values of every grading-0 generator, zeros included.
pub fn full_named(dga: &Dga, eps: &Augmentation) -> NamedAugmentation {
    (0..dga.len()).filter(|&g| dga.gradings[g] == 0).map(|g| (dga.names[g].clone(), eps.value(g))).collect()
}

/// A front carried through rewrites together with augmentations, which are
/// re-extended and re-verified after every step.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub legendrian: Legendrian,
    pub augmentations: Vec<NamedAugmentation>,
    pub config: DiskConfig,
    pub bound: i64,
    dga: Dga,
}

impl Pipeline {
    /// Extends the given partial augmentations by zero (or by search) on
    /// the remaining generators.
    pub fn new(legendrian: Legendrian, augmentations: &[NamedAugmentation], config: DiskConfig) -> Result<Pipeline> {
        let dga = legendrian.dga(config)?;
        let mut augs = Vec::new();
        for a in augmentations {
            let mut base: NamedAugmentation = (0..dga.len())
                .filter(|&g| dga.gradings[g] == 0)
                .map(|g| (dga.names[g].clone(), BigInt::from(0)))
                .collect();
            base.extend(a.iter().map(|(k, v)| (k.clone(), v.clone())));
            let eps = extend_augmentation(&dga, &base, &BTreeMap::new(), 1)?;
            augs.push(full_named(&dga, &eps));
        }
        Ok(Pipeline { legendrian, augmentations: augs, config, bound: 1, dga })
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn augmentation(&self, i: usize) -> Augmentation {
        let pairs: Vec<(&str, BigInt)> =
            self.augmentations[i].iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        Augmentation::from_named_big(&self.dga, &pairs).expect("names come from this front")
    }

    /// Applies a rewrite and carries the augmentations across it.
    pub fn apply(&mut self, rw: Rewrite) -> Result<()> {
        let dga = rw.result.dga(self.config)?;
        let mut flips: Vec<&[String]> = rw
            .hints
            .iter()
            .flat_map(|h| match h {
                Hint::Signs(sets) => sets.iter().map(|s| s.as_slice()).collect(),
                _ => Vec::new(),
            })
            .collect();
        flips.push(&[]);
        let mut augs = Vec::new();
        for a in &self.augmentations {
            let kept: NamedAugmentation = a
                .iter()
                .filter(|(k, _)| dga.index(k).is_some() && !rw.removed.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            let mut found = None;
            let mut last = None;
            // a Reidemeister II can force a value one past the box on the new pair
            'search: for bound in [self.bound, self.bound + 1] {
                for flip in &flips {
                    let mut base = kept.clone();
                    for name in flip.iter() {
                        if let Some(v) = base.get_mut(name) {
                            *v = -v.clone();
                        }
                    }
                    let defaults = transport(&dga, &base, &rw.hints);
                    match extend_augmentation(&dga, &base, &defaults, bound) {
                        Ok(eps) => {
                            found = Some(eps);
                            break 'search;
                        }
                        Err(e) => last = Some(e),
                    }
                }
            }
            let eps = match (found, last) {
                (Some(eps), _) => eps,
                (None, Some(e)) => return Err(e.into()),
                (None, None) => unreachable!("at least one candidate"),
            };
            augs.push(full_named(&dga, &eps));
        }
        self.legendrian = rw.result;
        self.augmentations = augs;
        self.dga = dga;
        Ok(())
    }

    /// Applies `op` to the current front and carries the augmentations.
    pub fn step<F>(&mut self, op: F) -> Result<Vec<String>>
    where
        F: FnOnce(&Legendrian) -> Result<Rewrite>,
    {
        let rw = op(&self.legendrian)?;
        let created = rw.created.clone();
        self.apply(rw)?;
        Ok(created)
    }

    /// Connected sum of the strands at `slot`, `slot + 1` before event
    /// `pos`, after enough nested kinks to equalise their potentials.
    /// `Below` kinks the upper strand downwards, `Above` the lower strand
    /// upwards. Returns the new crossing's name.
    pub fn kinked_sum(&mut self, pos: usize, slot: usize, side: KinkSide) -> Result<String> {
        let upper = self.legendrian.potential_at(pos, slot)?;
        let lower = self.legendrian.potential_at(pos, slot + 1)?;
        if upper < lower {
            return Err(SurgeryError::PotentialMismatch { pos, slot, upper, lower });
        }
        let j = (upper - lower) as usize;
        let (mut p, mut s) = (pos, slot);
        for _ in 0..j {
            match side {
                KinkSide::Below => {
                    self.step(|l| reidemeister1(l, p, s, KinkSide::Below))?;
                    p += 2;
                    s += 2;
                }
                KinkSide::Above => {
                    self.step(|l| reidemeister1(l, p, s + 1, KinkSide::Above))?;
                    p += 1;
                }
            }
        }
        let created = self.step(|l| connected_sum(l, p, s))?;
        Ok(created[0].clone())
    }
}
