//! JSON description of an extension.
//!
//! ```json
//! {"p": 2, "source_vars": ["X","Y","Z"], "target_vars": ["X","w","u"],
//!  "images": {"X": "X", "Y": "w^2 + X*u^2", "Z": "u^4"},
//!  "certs": [{"var": "X", "n": 0, "g": "X"}, {"var": "w", "n": 2, "g": "X^2*Z + Y^2"},
//!            {"var": "u", "n": 2, "g": "Z"}]}
//! ```
//! or, for an adapted extension, `{"p": 2, "source_vars": ["x","y"], "adapted": [{"var": "x", "m": 2}]}`.
//! Elements are infix expressions or `(rat ...)` S-expressions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AdaptedData, ExtensionSpec, InseparabilityCert};
use crate::error::{Error, Result};
use crate::field::FunctionField;
use crate::text::{parse_rat_any, rat_infix};

pub const EXTENSION_FORMAT: &str = "katoforms/extension/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFileCert {
    pub var: String,
    pub n: u32,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFileAdapted {
    pub var: String,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub p: u64,
    pub source_vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certs: Option<Vec<ExtensionFileCert>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adapted: Option<Vec<ExtensionFileAdapted>>,
}

impl ExtensionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ExtensionFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("extension spec: {e}")))?;
        if let Some(f) = &file.format {
            if f != EXTENSION_FORMAT {
                return Err(Error::Parse(format!("unsupported extension format `{f}`")));
            }
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<ExtensionSpec> {
        let source = FunctionField::from_names(self.p, self.source_vars.clone())?;
        if let Some(adapted) = &self.adapted {
            if self.target_vars.is_some() || self.images.is_some() || self.certs.is_some() {
                return Err(Error::Parse(
                    "`adapted` excludes target_vars, images and certs".into(),
                ));
            }
            let pairs: Vec<(&str, u32)> = adapted.iter().map(|a| (a.var.as_str(), a.m)).collect();
            return ExtensionSpec::build_adapted(
                &source,
                &AdaptedData::from_names(&source, &pairs)?,
            );
        }
        let missing = |k: &str| Error::Parse(format!("extension spec lacks `{k}`"));
        let target = FunctionField::from_names(
            self.p,
            self.target_vars
                .clone()
                .ok_or_else(|| missing("target_vars"))?,
        )?;
        let image_map = self.images.as_ref().ok_or_else(|| missing("images"))?;
        for k in image_map.keys() {
            if source.var_index(k).is_none() {
                return Err(Error::Parse(format!(
                    "image given for unknown variable `{k}`"
                )));
            }
        }
        let images = source
            .vars()
            .iter()
            .map(|v| {
                let text = image_map
                    .get(v)
                    .ok_or_else(|| Error::Parse(format!("no image for `{v}`")))?;
                parse_rat_any(text, &target)
            })
            .collect::<Result<Vec<_>>>()?;
        let certs = self
            .certs
            .as_ref()
            .ok_or_else(|| missing("certs"))?
            .iter()
            .map(|c| {
                let j = target.var_index(&c.var).ok_or_else(|| {
                    Error::Parse(format!("certificate for unknown variable `{}`", c.var))
                })?;
                Ok(InseparabilityCert {
                    target_var: j,
                    n: c.n,
                    g: parse_rat_any(&c.g, &source)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ExtensionSpec::build_embedding(&source, &target, images, certs)
    }

    /// Normalized explicit description of `spec`.
    pub fn from_spec(spec: &ExtensionSpec) -> Self {
        let (src, tgt) = (spec.source(), spec.target());
        let images = src
            .vars()
            .iter()
            .zip(spec.images())
            .map(|(v, im)| (v.clone(), rat_infix(im, tgt)))
            .collect();
        let mut certs: Vec<&InseparabilityCert> = spec.certs().iter().collect();
        certs.sort_by_key(|c| c.target_var);
        certs.dedup_by_key(|c| c.target_var);
        let certs = certs
            .into_iter()
            .map(|c| ExtensionFileCert {
                var: tgt.var_name(c.target_var).to_string(),
                n: c.n,
                g: rat_infix(&c.g, src),
            })
            .collect();
        ExtensionFile {
            format: Some(EXTENSION_FORMAT.to_string()),
            p: src.p() as u64,
            source_vars: src.vars().to_vec(),
            target_vars: Some(tgt.vars().to_vec()),
            images: Some(images),
            certs: Some(certs),
            adapted: None,
        }
    }
}
