//! Named structures with published constant tables.

use serde::Serialize;

use super::{Constants, Corank1Frame, Corank2Frame, Frame, Structure, StructureConstants1, StructureConstants2};
use crate::error::{Error, Result};
use crate::group::{c, AlgebraElement, Complex};

/// Which constant table to feed into `d'`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantsVariant {
    /// Constants as tabulated for the preset.
    Printed,
    /// Constants recomputed from the brackets of the frame.
    #[default]
    Recomputed,
}

impl std::str::FromStr for ConstantsVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "printed" => Ok(ConstantsVariant::Printed),
            "recomputed" => Ok(ConstantsVariant::Recomputed),
            other => Err(format!("unknown constants variant `{other}`")),
        }
    }
}

pub trait StructurePreset: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn frame(&self) -> Frame;
    fn printed_constants(&self) -> Constants;
}

fn r(v: f64) -> Complex {
    c(v, 0.0)
}

/// `L = ∂₋`, `M1 = ∂₊`, `M2 = ∂₀`.
pub struct Corank2Preset;

impl StructurePreset for Corank2Preset {
    fn name(&self) -> &'static str {
        "corank2-paper"
    }

    fn description(&self) -> &'static str {
        "CR structure spanned by ∂₋ with complements ∂₊, ∂₀"
    }

    fn frame(&self) -> Frame {
        Frame::Corank2(Corank2Frame { l: AlgebraElement::D_MINUS, m1: AlgebraElement::D_PLUS, m2: AlgebraElement::D_ZERO })
    }

    fn printed_constants(&self) -> Constants {
        Constants::Corank2(StructureConstants2 { a: [r(-1.0), r(0.0), r(0.0)], b: [[r(0.0), r(-2.0), r(0.0)], [r(0.0), r(0.0), r(1.0)]] })
    }
}

/// `L1 = ∂₋`, `L2 = ∂₀`, `M = ∂₊`.
pub struct Corank1Preset;

impl StructurePreset for Corank1Preset {
    fn name(&self) -> &'static str {
        "corank1-paper"
    }

    fn description(&self) -> &'static str {
        "elliptic structure spanned by ∂₋, ∂₀ with complement ∂₊"
    }

    fn frame(&self) -> Frame {
        Frame::Corank1(Corank1Frame { l1: AlgebraElement::D_MINUS, l2: AlgebraElement::D_ZERO, m: AlgebraElement::D_PLUS })
    }

    fn printed_constants(&self) -> Constants {
        Constants::Corank1(StructureConstants1 { a: [r(1.0), r(0.0)], b: [[r(0.0), r(-2.0), r(0.0)], [r(0.0), r(0.0), r(-1.0)]] })
    }
}

pub struct PresetRegistry {
    presets: Vec<Box<dyn StructurePreset>>,
}

impl PresetRegistry {
    pub fn empty() -> Self {
        PresetRegistry { presets: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = PresetRegistry::empty();
        reg.register(Box::new(Corank2Preset));
        reg.register(Box::new(Corank1Preset));
        reg
    }

    /// Adds a preset, replacing any previous one with the same name.
    pub fn register(&mut self, preset: Box<dyn StructurePreset>) {
        self.presets.retain(|p| p.name() != preset.name());
        self.presets.push(preset);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.presets.iter().map(|p| p.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn StructurePreset> {
        self.presets.iter().find(|p| p.name() == name).map(|p| p.as_ref()).ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }

    pub fn info(&self, name: &str) -> Result<PresetInfo> {
        let p = self.get(name)?;
        let frame = p.frame();
        let printed = p.printed_constants();
        let recomputed = frame.constants()?;
        Ok(PresetInfo { name: p.name(), frame, printed, recomputed })
    }
}

/// A printed constant that disagrees with the recomputed one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub key: String,
    pub printed: f64,
    pub recomputed: f64,
    pub printed_im: f64,
    pub recomputed_im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub frame: Frame,
    pub printed: Constants,
    pub recomputed: Constants,
}

impl PresetInfo {
    pub fn constants(&self, variant: ConstantsVariant) -> Constants {
        match variant {
            ConstantsVariant::Printed => self.printed,
            ConstantsVariant::Recomputed => self.recomputed,
        }
    }

    pub fn structure(&self, variant: ConstantsVariant) -> Result<Structure> {
        Structure::new(self.frame, self.constants(variant))
    }

    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        self.printed
            .entries()
            .into_iter()
            .zip(self.recomputed.entries())
            .filter(|((_, p), (_, q))| (p - q).norm() > 1e-9)
            .map(|((key, p), (_, q))| Discrepancy { key, printed: p.re, recomputed: q.re, printed_im: p.im, recomputed_im: q.im })
            .collect()
    }
}

/// Looks up a built-in preset.
pub fn preset(name: &str) -> Result<PresetInfo> {
    PresetRegistry::builtin().info(name)
}
