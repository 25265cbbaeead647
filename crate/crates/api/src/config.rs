use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ServiceError;

/// Overrides `bind` when set.
pub const BIND_ENV: &str = "READ_BIND";

pub const DEFAULT_BODY_LIMIT: usize = 64 * 1024;

/// Service configuration, read from TOML:
///
/// ```toml
/// bind = "127.0.0.1:8080"
/// cache = "resources.json"       # from `read ingest`
/// model = "model.json"           # from `read train`
/// static_dir = "ui/dist"         # optional
/// body_limit = 65536             # bytes
/// strict = false                 # 422 for unknown words in /api/pair
///
/// [replication]                  # optional; enables /api/replication/report
/// data = "dataset.csv"
/// map = "config/default_map.toml"
/// ```
///
/// Relative paths resolve against the config file's directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceConfig {
    #[serde(default = "default_bind")]
    pub bind: SocketAddr,
    pub cache: PathBuf,
    pub model: PathBuf,
    #[serde(default)]
    pub static_dir: Option<PathBuf>,
    #[serde(default = "default_body_limit")]
    pub body_limit: usize,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub replication: Option<ReplicationSource>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplicationSource {
    pub data: PathBuf,
    pub map: PathBuf,
}

fn default_bind() -> SocketAddr {
    SocketAddr::from(([127, 0, 0, 1], 8080))
}

fn default_body_limit() -> usize {
    DEFAULT_BODY_LIMIT
}

impl ServiceConfig {
    pub fn new(cache: impl Into<PathBuf>, model: impl Into<PathBuf>) -> Self {
        ServiceConfig {
            bind: default_bind(),
            cache: cache.into(),
            model: model.into(),
            static_dir: None,
            body_limit: DEFAULT_BODY_LIMIT,
            strict: false,
            replication: None,
        }
    }

    pub fn from_toml(text: &str, base: &Path) -> Result<Self, ServiceError> {
        let mut cfg: ServiceConfig =
            toml::from_str(text).map_err(|e| ServiceError::Config(e.to_string()))?;
        let abs = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        abs(&mut cfg.cache);
        abs(&mut cfg.model);
        if let Some(d) = &mut cfg.static_dir {
            abs(d);
        }
        if let Some(r) = &mut cfg.replication {
            abs(&mut r.data);
            abs(&mut r.map);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ServiceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        ServiceConfig::from_toml(&text, base)
    }

    /// Applies `READ_BIND` if present.
    pub fn with_env(mut self) -> Result<Self, ServiceError> {
        if let Ok(v) = std::env::var(BIND_ENV) {
            self.bind = v
                .parse()
                .map_err(|_| ServiceError::Config(format!("{BIND_ENV}={v:?} is not host:port")))?;
        }
        Ok(self)
    }

    /// Startup checks: every configured path readable, a usable port and
    /// body limit.
    pub fn validate(&self) -> Result<(), ServiceError> {
        let mut files = vec![&self.cache, &self.model];
        if let Some(r) = &self.replication {
            files.push(&r.data);
            files.push(&r.map);
        }
        for f in files {
            std::fs::File::open(f)
                .map_err(|e| ServiceError::Config(format!("{}: {e}", f.display())))?;
        }
        if let Some(d) = &self.static_dir {
            if !d.is_dir() {
                return Err(ServiceError::Config(format!("{} is not a directory", d.display())));
            }
        }
        if self.body_limit == 0 {
            return Err(ServiceError::Config("body_limit must be positive".into()));
        }
        Ok(())
    }
}
