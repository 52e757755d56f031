use std::io::Read;
use std::path::Path;

use ckgeom::{Signature, Space};

use crate::error::{CliError, CliResult};

/// Argument text: `-` reads stdin, an existing file path is read, anything
/// else is taken literally.
pub fn load(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| CliError::Read { path: "stdin".into(), source })?;
        return Ok(text);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|source| CliError::Read { path: arg.into(), source });
    }
    Ok(arg.to_string())
}

pub fn space(arg: Option<&str>) -> CliResult<Space> {
    let text = arg.ok_or_else(|| CliError::Usage("--space is required".into()))?;
    let sig: Signature = text.parse()?;
    Ok(Space::new(sig))
}

pub fn list<T: std::str::FromStr>(text: &str, count: usize, what: &str) -> CliResult<Vec<T>> {
    let items: Result<Vec<T>, _> = text.split(',').map(|t| t.trim().parse::<T>()).collect();
    match items {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(CliError::Usage(format!("{what} expects {count} comma-separated values, got {text:?}"))),
    }
}
