//! Ball snapshots on disk, keyed by the SHA-256 of the presentation and the
//! radius. A snapshot that fails to load or verify is recomputed and replaced.

use std::env;
use std::fs;
use std::path::PathBuf;

use cubemedian::{Ball, DefiningGraph, Error, Generator};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliResult;

pub const CACHE_ENV: &str = "CUBEMEDIAN_CACHE";

#[derive(Serialize, Deserialize)]
struct Snapshot {
    presentation: String,
    radius: usize,
    vertices: Vec<Vec<Generator>>,
}

pub struct BallCache {
    dir: PathBuf,
}

impl BallCache {
    pub fn from_env() -> Option<Self> {
        env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(|dir| BallCache { dir: dir.into() })
    }

    pub fn path(&self, graph: &DefiningGraph, radius: usize) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(graph.to_json_string().as_bytes());
        hasher.update(format!("\nradius={radius}").as_bytes());
        let hex: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("ball-{hex}.json"))
    }

    fn load(&self, graph: &DefiningGraph, radius: usize) -> Option<Ball> {
        let text = fs::read_to_string(self.path(graph, radius)).ok()?;
        let snap: Snapshot = serde_json::from_str(&text).ok()?;
        if snap.presentation != graph.to_json_string() || snap.radius != radius {
            return None;
        }
        graph.ball_from_words(radius, snap.vertices).ok()
    }

    fn store(&self, graph: &DefiningGraph, ball: &Ball) {
        let snap = Snapshot {
            presentation: graph.to_json_string(),
            radius: ball.radius(),
            vertices: ball.words(),
        };
        let path = self.path(graph, ball.radius());
        let tmp = path.with_extension("tmp");
        let written = fs::create_dir_all(&self.dir)
            .and_then(|_| fs::write(&tmp, serde_json::to_string(&snap).expect("snapshot serializes")))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = written {
            eprintln!("warning: ball cache not written to {}: {e}", path.display());
        }
    }

    /// Same result as `graph.ball(radius, cap)`, including the cap error.
    pub fn ball(&self, graph: &DefiningGraph, radius: usize, cap: usize) -> CliResult<Ball> {
        if let Some(ball) = self.load(graph, radius) {
            if ball.len() > cap {
                return Err(Error::ResourceCap {
                    what: "ball materialization",
                    limit: cap,
                }
                .into());
            }
            return Ok(ball);
        }
        let ball = graph.ball(radius, cap)?;
        self.store(graph, &ball);
        Ok(ball)
    }
}
