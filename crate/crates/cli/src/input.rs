use anyhow::{anyhow, bail, Context, Result};
use quasicartan::fixtures::{self, FixtureKind};
use quasicartan::{io, Companion, CompanionBasis, Error, Quiver, Triangulation};
use std::path::Path;

/// Where a command's objects come from. Explicit files win over whatever
/// a fixture supplies.
#[derive(clap::Args, Debug, Default)]
pub struct Sources {
    /// Quiver file (QVR v1 text or JSON).
    #[arg(long, value_name = "FILE")]
    pub quiver: Option<String>,
    /// Companion file (QCC v1 text or JSON).
    #[arg(long, value_name = "FILE")]
    pub companion: Option<String>,
    /// Companion basis JSON file.
    #[arg(long, value_name = "FILE")]
    pub basis: Option<String>,
    /// Surface JSON `{g, k}`; the standard triangulation is used.
    #[arg(long, value_name = "FILE")]
    pub surface: Option<String>,
    /// Triangulation JSON.
    #[arg(long, value_name = "FILE")]
    pub triangulation: Option<String>,
    /// Named fixture (see `qc fixtures`).
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).with_context(|| format!("cannot read {path}"))
}

// Parse errors are reported as `file:line:column: message`.
fn parse_file<T>(path: &str, parse: impl Fn(&str) -> quasicartan::Result<T>) -> Result<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => anyhow!("{path}:{line}:{column}: {message}"),
        other => anyhow::Error::new(other).context(format!("invalid input in {path}")),
    })
}

// Fixture names that may accompany `name`, most specific first.
fn companions_of(name: &str, suffix: &str) -> Vec<String> {
    let stem = name
        .strip_suffix("-quiver")
        .or_else(|| name.strip_suffix("-basis"))
        .or_else(|| name.strip_suffix("-companion"))
        .unwrap_or(name);
    vec![format!("{name}{suffix}"), format!("{stem}{suffix}")]
}

fn related(name: &str, suffix: &str, kind: FixtureKind) -> Option<&'static str> {
    companions_of(name, suffix)
        .into_iter()
        .filter_map(|n| fixtures::find(&n).ok())
        .find(|f| f.kind == kind)
        .map(|f| f.name)
}

impl Sources {
    fn fixture_kind(&self) -> Result<Option<(&str, FixtureKind)>> {
        match &self.fixture {
            Some(name) => Ok(Some((name.as_str(), fixtures::find(name)?.kind))),
            None => Ok(None),
        }
    }

    /// Triangulation, when the inputs describe a surface.
    pub fn triangulation(&self) -> Result<Option<Triangulation>> {
        if let Some(path) = &self.triangulation {
            return parse_file(path, io::parse_triangulation).map(Some);
        }
        if let Some(path) = &self.surface {
            let spec = parse_file(path, io::parse_surface_spec)?;
            return Ok(Some(quasicartan::build_triangulation(&spec)?));
        }
        match self.fixture_kind()? {
            Some((name, FixtureKind::Surface)) => {
                let spec = fixtures::surface(name)?;
                Ok(Some(quasicartan::build_triangulation(&spec)?))
            }
            _ => Ok(None),
        }
    }

    pub fn require_triangulation(&self) -> Result<Triangulation> {
        self.triangulation()?
            .ok_or_else(|| anyhow!("a surface is required: use --surface, --triangulation or a surface --fixture"))
    }

    pub fn quiver(&self) -> Result<Quiver> {
        if let Some(path) = &self.quiver {
            return parse_file(path, io::parse_quiver);
        }
        if let Some(t) = self.triangulation()? {
            return Ok(t.quiver());
        }
        if let Some((name, kind)) = self.fixture_kind()? {
            let source = match kind {
                FixtureKind::Quiver => Some(name),
                _ => related(name, "-quiver", FixtureKind::Quiver).or_else(|| related(name, "", FixtureKind::Quiver)),
            };
            if let Some(q) = source {
                return Ok(fixtures::quiver(q)?);
            }
            bail!("fixture {name} has no quiver; pass --quiver");
        }
        bail!("a quiver is required: use --quiver or --fixture")
    }

    pub fn basis(&self) -> Result<Option<CompanionBasis>> {
        if let Some(path) = &self.basis {
            return parse_file(path, io::parse_basis).map(Some);
        }
        if let Some(t) = self.triangulation()? {
            return Ok(Some(t.admissible_companion_basis()?.basis));
        }
        if let Some((name, kind)) = self.fixture_kind()? {
            let source = match kind {
                FixtureKind::Basis => Some(name),
                _ => related(name, "-basis", FixtureKind::Basis),
            };
            if let Some(b) = source {
                return Ok(Some(fixtures::basis(b)?));
            }
        }
        Ok(None)
    }

    pub fn require_basis(&self) -> Result<CompanionBasis> {
        self.basis()?
            .ok_or_else(|| anyhow!("a companion basis is required: use --basis or a fixture that has one"))
    }

    /// Companion from a companion file or fixture, else the Gram matrix
    /// of the basis.
    pub fn companion(&self) -> Result<Companion> {
        if let Some(path) = &self.companion {
            return parse_file(path, io::parse_companion);
        }
        if let Some((name, kind)) = self.fixture_kind()? {
            let source = match kind {
                FixtureKind::Companion => Some(name),
                _ => related(name, "-companion", FixtureKind::Companion),
            };
            if let Some(c) = source {
                return Ok(fixtures::companion(c)?);
            }
        }
        match self.basis()? {
            Some(b) => Ok(b.companion()?),
            None => bail!("a companion is required: use --companion, --basis or a fixture that has one"),
        }
    }
}

/// Converts 1-based vertex arguments to 0-based indices.
pub fn vertices(ks: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    ks.iter()
        .map(|&k| {
            if k == 0 || k > n {
                bail!("{what} {k} outside 1..={n}");
            }
            Ok(k - 1)
        })
        .collect()
}
