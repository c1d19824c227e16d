//! Resolving `--group` arguments: built-in family ids or definition files.

use std::path::Path;

use selfsim_core::{ggs, grigorchuk, hanoi, hanoi_chain, DefError, FamilyError, GroupDef};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("unknown group '{0}'")]
    Unknown(String),
    #[error("bad parameters in '{spec}': {message}")]
    Parameters { spec: String, message: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{path}: {source}")]
    Definition { path: String, source: DefError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// `hanoi:<d>`, `hanoi-chain:<d>`, `ggs:<p>:<e1,...>`, `grigorchuk`, or a path.
pub fn resolve(spec: &str) -> Result<GroupDef, SpecError> {
    if let Some(def) = builtin(spec)? {
        return Ok(def);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(SpecError::Unknown(spec.to_string()));
    }
    let text =
        std::fs::read_to_string(path).map_err(|source| SpecError::Io { path: spec.to_string(), source })?;
    crate::deffile::parse(&text).map_err(|source| SpecError::Definition { path: spec.to_string(), source })
}

/// `None` when `spec` does not name a family.
pub fn builtin(spec: &str) -> Result<Option<GroupDef>, SpecError> {
    let bad = |message: &str| SpecError::Parameters { spec: spec.to_string(), message: message.to_string() };
    let mut parts = spec.split(':');
    let family = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let def = match (family, args.as_slice()) {
        ("grigorchuk", []) => grigorchuk(),
        ("hanoi", [d]) => hanoi(d.parse().map_err(|_| bad("degree must be an integer"))?)?,
        ("hanoi-chain", [d]) => hanoi_chain(d.parse().map_err(|_| bad("degree must be an integer"))?)?,
        ("ggs", [p, e]) => {
            let p: usize = p.parse().map_err(|_| bad("p must be an integer"))?;
            let e: Vec<i64> = e
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad("defining vector must be comma-separated integers"))?;
            ggs(p, &e)?
        }
        ("grigorchuk" | "hanoi" | "hanoi-chain" | "ggs", _) => return Err(bad("wrong number of parameters")),
        _ => return Ok(None),
    };
    Ok(Some(def))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        assert_eq!(resolve("hanoi-chain:3").unwrap().names(), ["b1", "b2"]);
        assert_eq!(resolve("hanoi:3").unwrap().generator_count(), 3);
        assert_eq!(resolve("ggs:3:1,2").unwrap().names(), ["a", "b"]);
        assert_eq!(resolve("grigorchuk").unwrap().generator_count(), 4);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(resolve("ggs:3"), Err(SpecError::Parameters { .. })));
        assert!(matches!(resolve("ggs:3:1,x"), Err(SpecError::Parameters { .. })));
        assert!(matches!(resolve("ggs:3:1"), Err(SpecError::Family(_))));
        assert!(matches!(resolve("hanoi:1"), Err(SpecError::Family(_))));
        assert!(matches!(resolve("basilica"), Err(SpecError::Unknown(_))));
    }
}
