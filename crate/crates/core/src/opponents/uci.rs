//! Minimal UCI client for driving an external chess engine binary.
//!
//! Only the handshake, `position fen`, and `go movetime` round trips are
//! implemented — enough to ask a conventional engine for one move at a time.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum UciError {
    #[error("failed to launch uci engine `{path}`: {source}")]
    Launch {
        path: String,
        source: std::io::Error,
    },
    #[error("uci engine i/o failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("uci engine closed its pipe before replying")]
    Closed,
    #[error("timed out after {0:?} waiting for `{1}`")]
    Timeout(Duration, String),
    #[error("uci engine sent malformed line: {0}")]
    Malformed(String),
}

/// Handle to a running engine process speaking UCI on stdin/stdout.
#[derive(Debug)]
pub struct UciEngine {
    child: Child,
    stdin: ChildStdin,
    stdout: BufReader<ChildStdout>,
    handshake_timeout: Duration,
}

impl UciEngine {
    /// Spawns `path` and performs the `uci`/`isready` handshake.
    pub fn launch(path: &str) -> Result<UciEngine, UciError> {
        let mut child = Command::new(path)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|source| UciError::Launch {
                path: path.to_string(),
                source,
            })?;
        let stdin = child.stdin.take().expect("stdin was piped");
        let stdout = BufReader::new(child.stdout.take().expect("stdout was piped"));
        let mut engine = UciEngine {
            child,
            stdin,
            stdout,
            handshake_timeout: Duration::from_secs(10),
        };
        engine.send("uci")?;
        engine.wait_for("uciok", engine.handshake_timeout)?;
        engine.send("isready")?;
        engine.wait_for("readyok", engine.handshake_timeout)?;
        Ok(engine)
    }

    fn send(&mut self, line: &str) -> Result<(), UciError> {
        writeln!(self.stdin, "{line}")?;
        self.stdin.flush()?;
        Ok(())
    }

    /// Reads lines until one starts with `token`, returning that line.
    fn wait_for(&mut self, token: &str, timeout: Duration) -> Result<String, UciError> {
        let deadline = Instant::now() + timeout;
        loop {
            if Instant::now() > deadline {
                return Err(UciError::Timeout(timeout, token.to_string()));
            }
            let mut line = String::new();
            if self.stdout.read_line(&mut line)? == 0 {
                return Err(UciError::Closed);
            }
            let line = line.trim();
            if line.starts_with(token) {
                return Ok(line.to_string());
            }
        }
    }

    /// Asks for the best move from `fen`, thinking for `movetime_ms`.
    /// Returns the move in UCI long algebraic form (e.g. `e2e4`, `e7e8q`).
    pub fn best_move(&mut self, fen: &str, movetime_ms: u64) -> Result<String, UciError> {
        self.send(&format!("position fen {fen}"))?;
        self.send(&format!("go movetime {movetime_ms}"))?;
        // Allow generous slack over the nominal movetime before giving up.
        let timeout = Duration::from_millis(movetime_ms.saturating_mul(10).max(5_000));
        let line = self.wait_for("bestmove", timeout)?;
        match line.split_whitespace().nth(1) {
            Some(mv) if mv != "(none)" => Ok(mv.to_string()),
            _ => Err(UciError::Malformed(line)),
        }
    }
}

impl Drop for UciEngine {
    fn drop(&mut self) {
        let _ = self.send("quit");
        // Give the process a moment to exit cleanly, then reap it.
        let deadline = Instant::now() + Duration::from_millis(500);
        loop {
            match self.child.try_wait() {
                Ok(Some(_)) => return,
                Ok(None) if Instant::now() < deadline => {
                    std::thread::sleep(Duration::from_millis(10))
                }
                _ => break,
            }
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::os::unix::fs::PermissionsExt;

    /// Writes a tiny shell script that speaks just enough UCI for the tests.
    fn fake_engine(dir: &std::path::Path, bestmove: &str) -> String {
        let path = dir.join("fake-uci.sh");
        let mut f = std::fs::File::create(&path).unwrap();
        write!(
            f,
            "#!/bin/sh\nwhile read line; do\n  case \"$line\" in\n    uci*) echo 'id name fake'; echo uciok ;;\n    isready*) echo readyok ;;\n    go*) echo 'info depth 1'; echo 'bestmove {bestmove}' ;;\n    quit*) exit 0 ;;\n  esac\ndone\n"
        )
        .unwrap();
        let mut perms = f.metadata().unwrap().permissions();
        perms.set_mode(0o755);
        std::fs::set_permissions(&path, perms).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn handshake_and_best_move() {
        let dir = tempfile::tempdir().unwrap();
        let path = fake_engine(dir.path(), "e2e4");
        let mut engine = UciEngine::launch(&path).unwrap();
        let mv = engine
            .best_move(
                "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1",
                50,
            )
            .unwrap();
        assert_eq!(mv, "e2e4");
        // A second query reuses the same process.
        assert_eq!(engine.best_move("8/8/8/8/8/8/8/K6k w - - 0 1", 50).unwrap(), "e2e4");
    }

    #[test]
    fn launch_failure_is_reported() {
        let err = UciEngine::launch("/nonexistent/engine-binary").unwrap_err();
        assert!(matches!(err, UciError::Launch { .. }));
    }

    #[test]
    fn none_bestmove_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let path = fake_engine(dir.path(), "(none)");
        let mut engine = UciEngine::launch(&path).unwrap();
        let err = engine.best_move("8/8/8/8/8/8/8/K6k w - - 0 1", 50).unwrap_err();
        assert!(matches!(err, UciError::Malformed(_)));
    }
}
