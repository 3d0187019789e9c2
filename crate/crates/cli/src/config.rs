//! JSON trinoid configuration: `p0 p1 pinf q0 q1 qinf` as `[re, im]`, optional `patches`.

use serde_json::{Map, Value};
use trinoid_core::fuchsian::Branch;
use trinoid_core::mesh::PatchConfig;
use trinoid_core::Complex;

pub const DEFAULT_SAMPLES: usize = 32;
pub const DEFAULT_EPS: f64 = 0.05;

const RESIDUE_KEYS: [&str; 6] = ["p0", "p1", "pinf", "q0", "q1", "qinf"];

#[derive(Debug, Clone, PartialEq)]
pub struct TrinoidConfig {
    pub p: [Complex; 3],
    pub q: [Complex; 3],
    pub patches: Vec<PatchConfig>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config: {}", self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

fn complex(key: &str, v: &Value) -> Result<Complex, ConfigError> {
    match v.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<_>>>()) {
        Some(Some(x)) if x.len() == 2 => Ok(Complex::new(x[0], x[1])),
        _ => err(format!("key \"{key}\": expected [re, im], got {v}")),
    }
}

fn end_of(key: &str, v: &Value) -> Result<Branch, ConfigError> {
    match v.as_str().or_else(|| v.as_u64().and_then(|n| ["0", "1"].get(n as usize).copied())) {
        Some("0") => Ok(Branch::Zero),
        Some("1") => Ok(Branch::One),
        Some("inf") => Ok(Branch::Infinity),
        _ => err(format!("key \"{key}\": expected \"0\", \"1\" or \"inf\", got {v}")),
    }
}

fn patch(path: &str, obj: &Value, end: Branch) -> Result<PatchConfig, ConfigError> {
    let Some(obj) = obj.as_object() else { return err(format!("key \"{path}\": expected an object")) };
    let mut end = end;
    let (mut n_r, mut n_theta, mut eps) = (DEFAULT_SAMPLES, DEFAULT_SAMPLES, DEFAULT_EPS);
    for (k, v) in obj {
        let key = format!("{path}.{k}");
        let count = || v.as_u64().map(|n| n as usize).ok_or_else(|| ConfigError(format!("key \"{key}\": expected a positive integer, got {v}")));
        match k.as_str() {
            "n_r" => n_r = count()?,
            "n_theta" => n_theta = count()?,
            "eps" => eps = v.as_f64().ok_or_else(|| ConfigError(format!("key \"{key}\": expected a number, got {v}")))?,
            "end" => end = end_of(&key, v)?,
            _ => return err(format!("unknown key \"{key}\"")),
        }
    }
    PatchConfig::new(end, n_r, n_theta, eps).map_err(|e| ConfigError(format!("key \"{path}\": {e}")))
}

/// Mesh settings shared by all three ends.
pub fn uniform_patches(ends: &[Branch], n_r: usize, n_theta: usize, eps: f64) -> Result<Vec<PatchConfig>, trinoid_core::Error> {
    ends.iter().map(|&e| PatchConfig::new(e, n_r, n_theta, eps)).collect()
}

pub fn parse(text: &str) -> Result<TrinoidConfig, ConfigError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ConfigError(format!("invalid JSON: {e}")))?;
    let Some(obj) = root.as_object() else { return err("top level must be an object") };
    if let Some(k) = obj.keys().find(|k| !RESIDUE_KEYS.contains(&k.as_str()) && k.as_str() != "patches") {
        return err(format!("unknown key \"{k}\""));
    }
    let get = |k: &str| -> Result<Complex, ConfigError> {
        obj.get(k).map_or_else(|| err(format!("missing key \"{k}\"")), |v| complex(k, v))
    };
    let p = [get("p0")?, get("p1")?, get("pinf")?];
    let q = [get("q0")?, get("q1")?, get("qinf")?];
    let patches = patches(obj)?;
    Ok(TrinoidConfig { p, q, patches })
}

fn patches(obj: &Map<String, Value>) -> Result<Vec<PatchConfig>, ConfigError> {
    match obj.get("patches") {
        None => Ok(Branch::ALL
            .iter()
            .map(|&e| PatchConfig::new(e, DEFAULT_SAMPLES, DEFAULT_SAMPLES, DEFAULT_EPS).expect("defaults are valid"))
            .collect()),
        Some(v @ Value::Object(_)) => Branch::ALL.iter().map(|&e| patch("patches", v, e)).collect(),
        Some(Value::Array(list)) if list.len() == 3 => {
            let out: Vec<PatchConfig> =
                list.iter().zip(Branch::ALL).enumerate().map(|(i, (v, e))| patch(&format!("patches[{i}]"), v, e)).collect::<Result<_, _>>()?;
            for e in Branch::ALL {
                if out.iter().filter(|c| c.end == e).count() != 1 {
                    return err(format!("key \"patches\": end {} must appear exactly once", e.label()));
                }
            }
            Ok(out)
        }
        Some(v) => err(format!("key \"patches\": expected an object or an array of 3 objects, got {v}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SYM: &str = r#"{"p0":[0.1,0],"p1":[-0.3,0],"pinf":[1.2,0],"q0":[0.3,0],"q1":[0.3,0],"qinf":[0.3,0]}"#;

    #[test]
    fn minimal_config_gets_default_patches() {
        let c = parse(SYM).unwrap();
        assert_eq!(c.p[2], Complex::new(1.2, 0.0));
        assert_eq!(c.patches.len(), 3);
        assert_eq!(c.patches[2].end, Branch::Infinity);
    }

    #[test]
    fn patches_object_and_array() {
        let t = SYM.replace('}', r#","patches":{"n_r":8,"n_theta":12,"eps":0.1}}"#);
        let c = parse(&t).unwrap();
        assert!(c.patches.iter().all(|p| p.n_r == 8 && p.n_theta == 12 && p.eps == 0.1));
        let t = SYM.replace('}', r#","patches":[{"end":"inf"},{"end":"1","n_r":5},{"end":"0"}]}"#);
        let c = parse(&t).unwrap();
        assert_eq!(c.patches[0].end, Branch::Infinity);
        assert_eq!(c.patches[1].n_r, 5);
    }

    #[test]
    fn errors_name_the_key() {
        let cases = [
            (SYM.replace(r#""p1":[-0.3,0],"#, ""), "\"p1\""),
            (SYM.replace("[0.3,0],\"q1\"", "0.3,\"q1\""), "\"q0\""),
            (SYM.replace('}', r#","extra":1}"#), "\"extra\""),
            (SYM.replace('}', r#","patches":{"n_r":2}}"#), "\"patches\""),
            (SYM.replace('}', r#","patches":{"eps":"x"}}"#), "\"patches.eps\""),
            (SYM.replace('}', r#","patches":[{},{}]}"#), "\"patches\""),
        ];
        for (text, key) in cases {
            let e = parse(&text).unwrap_err();
            assert!(e.0.contains(key), "{} lacks {key}", e.0);
        }
    }
}
