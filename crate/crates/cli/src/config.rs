//! Plain `key = value` configuration for backend command templates and
//! guard thresholds.
//!
//! Recognized keys:
//!
//! - `7z_cmd`      — command template for the 7z-family backend
//! - `zpaq_cmd`    — command template for the zpaq-family backend
//! - `custom_cmd`  — command template for the custom-command backend
//! - `timeout_secs`        — external tool timeout (default 60)
//! - `large_threshold_mib` — size guard for full spectra (default 10)
//!
//! Lines starting with `#` are comments. The environment variables
//! `INFOMETER_7Z_CMD` and `INFOMETER_ZPAQ_CMD` override the file.

use std::path::Path;
use std::time::Duration;

#[derive(Debug, Clone)]
pub struct Config {
    pub seven_z_cmd: Option<String>,
    pub zpaq_cmd: Option<String>,
    pub custom_cmd: Option<String>,
    pub timeout: Duration,
    pub large_threshold_bytes: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seven_z_cmd: None,
            zpaq_cmd: None,
            custom_cmd: None,
            timeout: Duration::from_secs(60),
            large_threshold_bytes: 10 * 1024 * 1024,
        }
    }
}

impl Config {
    /// Loads the optional config file, then applies environment overrides.
    pub fn load(path: Option<&Path>) -> Result<Config, String> {
        let mut config = Config::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            config.apply_text(&text, &path.display().to_string())?;
        }
        if let Ok(cmd) = std::env::var("INFOMETER_7Z_CMD") {
            config.seven_z_cmd = Some(cmd);
        }
        if let Ok(cmd) = std::env::var("INFOMETER_ZPAQ_CMD") {
            config.zpaq_cmd = Some(cmd);
        }
        Ok(config)
    }

    fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), String> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{origin}:{}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "7z_cmd" => self.seven_z_cmd = Some(value.to_string()),
                "zpaq_cmd" => self.zpaq_cmd = Some(value.to_string()),
                "custom_cmd" => self.custom_cmd = Some(value.to_string()),
                "timeout_secs" => {
                    let secs: u64 = value
                        .parse()
                        .map_err(|_| format!("{origin}:{}: timeout_secs must be an integer", lineno + 1))?;
                    self.timeout = Duration::from_secs(secs);
                }
                "large_threshold_mib" => {
                    let mib: u64 = value.parse().map_err(|_| {
                        format!("{origin}:{}: large_threshold_mib must be an integer", lineno + 1)
                    })?;
                    self.large_threshold_bytes = mib * 1024 * 1024;
                }
                other => {
                    return Err(format!("{origin}:{}: unknown key '{other}'", lineno + 1));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys_and_comments() {
        let mut config = Config::default();
        config
            .apply_text(
                "# comment\n7z_cmd = 7z a {output} {input}\ntimeout_secs = 5\nlarge_threshold_mib=2\n",
                "test",
            )
            .unwrap();
        assert_eq!(config.seven_z_cmd.as_deref(), Some("7z a {output} {input}"));
        assert_eq!(config.timeout, Duration::from_secs(5));
        assert_eq!(config.large_threshold_bytes, 2 * 1024 * 1024);
    }

    #[test]
    fn rejects_unknown_keys() {
        let mut config = Config::default();
        assert!(config.apply_text("nope = 1", "test").is_err());
        assert!(config.apply_text("just a line", "test").is_err());
    }
}
