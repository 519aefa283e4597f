//! Host metadata echoed into JSON summaries.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct HostInfo {
    pub cpu_model: String,
    pub os: String,
    pub arch: String,
    pub toolkit_version: String,
    /// Measured clock granularity; only reported for timing runs so that
    /// deterministic experiments stay byte-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timer_resolution_ns: Option<u64>,
}

impl HostInfo {
    pub fn collect() -> Self {
        HostInfo {
            cpu_model: cpu_model(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            timer_resolution_ns: None,
        }
    }

    pub fn with_timer_resolution(&self, resolution_ns: u64) -> Self {
        let mut info = self.clone();
        info.timer_resolution_ns = Some(resolution_ns);
        info
    }
}

fn cpu_model() -> String {
    #[cfg(target_os = "linux")]
    {
        if let Ok(cpuinfo) = std::fs::read_to_string("/proc/cpuinfo") {
            for line in cpuinfo.lines() {
                if let Some(rest) = line.strip_prefix("model name") {
                    if let Some((_, value)) = rest.split_once(':') {
                        return value.trim().to_string();
                    }
                }
            }
        }
    }
    "unknown".to_string()
}
