//! Reading command inputs: inline text or file paths, fields and extensions.

use std::path::Path;

use katoforms::extensions::{ExtensionFile, ExtensionSpec};
use katoforms::oracle::SearchBounds;
use katoforms::text::{parse_form_any, parse_rat_any};
use katoforms::witt::QuadForm;
use katoforms::{DiffForm, FunctionField, RatFunc};

use crate::CliError;

/// The file contents when `arg` names an existing file, otherwise `arg` itself.
pub fn read_value(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

pub fn load_extension(path: &str) -> Result<ExtensionSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    Ok(ExtensionFile::from_json(&text)?.build()?)
}

/// `--field` wins; otherwise the source field of `--ext`.
pub fn resolve_field(
    field: Option<&str>,
    ext: Option<&ExtensionSpec>,
) -> Result<FunctionField, CliError> {
    match (field, ext) {
        (Some(desc), _) => Ok(FunctionField::parse_descriptor(desc)?),
        (None, Some(ext)) => Ok(ext.source().clone()),
        (None, None) => Err(CliError::Usage(
            "a field is required (--field F2(x,y) or --ext FILE)".into(),
        )),
    }
}

pub fn form(arg: &str, field: &FunctionField) -> Result<DiffForm, CliError> {
    Ok(parse_form_any(read_value(arg)?.trim(), field)?)
}

pub fn quad(arg: &str, field: &FunctionField) -> Result<QuadForm, CliError> {
    Ok(QuadForm::parse(read_value(arg)?.trim(), field)?)
}

/// Comma-separated elements.
pub fn elements(arg: &str, field: &FunctionField) -> Result<Vec<RatFunc>, CliError> {
    read_value(arg)?
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok(parse_rat_any(s, field)?))
        .collect()
}

/// Forms one per line (file) or separated by `;` (inline); `#` starts a comment line.
pub fn form_list(arg: &str, field: &FunctionField) -> Result<Vec<DiffForm>, CliError> {
    let text = read_value(arg)?;
    text.split(['\n', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(|s| Ok(parse_form_any(s, field)?))
        .collect()
}

pub fn bounds(
    field: &FunctionField,
    degree: u32,
    dens: &str,
    caps: Option<&str>,
) -> Result<SearchBounds, CliError> {
    let denominators = elements(dens, field)?;
    if denominators.is_empty() || denominators.iter().any(RatFunc::is_zero) {
        return Err(CliError::Usage(
            "denominators must be a nonempty list of nonzero elements".into(),
        ));
    }
    let mut b = SearchBounds::with_denominators(degree, denominators);
    if let Some(caps) = caps {
        let caps: Vec<u32> = caps
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad cap `{c}`")))
            })
            .collect::<Result<_, _>>()?;
        if caps.len() != field.nvars() {
            return Err(CliError::Usage(format!(
                "expected {} caps, got {}",
                field.nvars(),
                caps.len()
            )));
        }
        b.caps = Some(caps);
    }
    Ok(b)
}
