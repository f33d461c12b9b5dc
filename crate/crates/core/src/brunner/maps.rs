use serde::{Deserialize, Serialize};

use num_traits::Signed;

use super::{g_reduce, g_reduce_form, GPresentation, GroupError};
use crate::words::{Gen, GenWord};

/// A candidate homomorphism `G(source) -> G(target)` given by the images of
/// `a` and `t`. Images are target words and may use `b`; a source `b` is
/// read as `t^-1 a^k t` and so never needs an image of its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupMap {
    pub source: GPresentation,
    pub target: GPresentation,
    pub image_a: GenWord,
    pub image_t: GenWord,
}

impl GroupMap {
    pub fn new(
        source: GPresentation,
        target: GPresentation,
        image_a: GenWord,
        image_t: GenWord,
    ) -> Self {
        GroupMap {
            source,
            target,
            image_a,
            image_t,
        }
    }

    pub fn identity(pres: &GPresentation) -> Self {
        GroupMap::new(pres.clone(), pres.clone(), GenWord::a(1), GenWord::t(1))
    }

    /// Image of a source word (not reduced).
    pub fn apply(&self, w: &GenWord) -> GenWord {
        let image_b = self
            .image_t
            .invert()
            .multiply(&self.image_a.pow(self.source.k()))
            .multiply(&self.image_t);
        w.substitute(|g| match g {
            Gen::A => self.image_a.clone(),
            Gen::T => self.image_t.clone(),
            Gen::B => image_b.clone(),
        })
    }

    /// `self` followed by `next`, with images reduced in the final target.
    pub fn then(&self, next: &GroupMap) -> Result<GroupMap, GroupError> {
        if self.target != next.source {
            return Err(GroupError::CompositionMismatch(Box::new((
                self.target.clone(),
                next.source.clone(),
            ))));
        }
        Ok(GroupMap::new(
            self.source.clone(),
            next.target.clone(),
            g_reduce(&next.target, &next.apply(&self.image_a)),
            g_reduce(&next.target, &next.apply(&self.image_t)),
        ))
    }

    /// True iff the generator images are literally `a` and `t`.
    pub fn fixes_generators(&self) -> bool {
        self.image_a == GenWord::a(1) && self.image_t == GenWord::t(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub holds: bool,
    /// The reduced image of the source relator in the target.
    pub reduced_image: GenWord,
}

/// Checks that the source relator maps to the identity of the target.
pub fn verify_homomorphism(map: &GroupMap) -> Verification {
    let image = map.apply(&map.source.relator());
    let reduced = g_reduce_form(&map.target, &image);
    Verification {
        holds: reduced.is_identity(),
        reduced_image: reduced.to_word(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSignNormalization {
    pub original: GPresentation,
    pub presentation: GPresentation,
    /// `original -> presentation`, `a -> a^-1`, `t -> t`.
    pub forward: GroupMap,
    /// `presentation -> original`, same formulas.
    pub backward: GroupMap,
}

/// Replaces `G(l,m;k)` with `k < 0` by `G(l,m;-k)`, with witness maps
/// `a -> a^-1, t -> t` in both directions.
pub fn normalize_k_sign(
    l: impl Into<num_bigint::BigInt>,
    m: impl Into<num_bigint::BigInt>,
    k: impl Into<num_bigint::BigInt>,
) -> Result<KSignNormalization, GroupError> {
    let original = GPresentation::new_signed(l, m, k)?;
    if original.k().is_positive() {
        return Err(GroupError::AlreadyCanonical(original.k().clone()));
    }
    let presentation =
        GPresentation::new(original.l().clone(), original.m().clone(), -original.k())?;
    let forward = GroupMap::new(
        original.clone(),
        presentation.clone(),
        GenWord::a(-1),
        GenWord::t(1),
    );
    let backward = GroupMap::new(
        presentation.clone(),
        original.clone(),
        GenWord::a(-1),
        GenWord::t(1),
    );
    Ok(KSignNormalization {
        original,
        presentation,
        forward,
        backward,
    })
}
