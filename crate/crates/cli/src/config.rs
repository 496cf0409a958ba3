//! Flat `key = value` config files. Keys are long flag names; values fill
//! in flags not given on the command line.

use std::path::Path;

use anyhow::{bail, Context};

/// Short spellings that count as "given on the command line".
const SHORT: &[(&str, &str)] = &[("q", "-q"), ("diameter", "-D"), ("base", "-x"), ("jobs", "-j")];

pub fn parse(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected `key = value`, got {raw:?}", n + 1);
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        let key = if key == "D" { "diameter".to_string() } else { key };
        if key.is_empty() {
            bail!("config line {}: empty key", n + 1);
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn given(args: &[String], key: &str) -> bool {
    let long = format!("--{key}");
    let prefix = format!("--{key}=");
    let short = SHORT.iter().find(|(k, _)| *k == key).map(|(_, s)| *s);
    args.iter()
        .any(|a| a == &long || a.starts_with(&prefix) || Some(a.as_str()) == short)
}

/// Appends config entries to `args` unless the flag is already present.
/// `true`/`false` values toggle boolean flags.
pub fn merge(args: &mut Vec<String>, path: &Path) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    for (key, value) in parse(&text)? {
        if key == "config" || given(args, &key) {
            continue;
        }
        match value.as_str() {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value);
            }
        }
    }
    Ok(())
}

/// The `--config` path, if any, in either spelling.
pub fn find_path(args: &[String]) -> Option<String> {
    args.iter().enumerate().find_map(|(i, a)| {
        if a == "--config" {
            args.get(i + 1).cloned()
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_skips_comments() {
        let kv = parse("# sweep\nq_max = 5\n D = 6 # trailing\n\nformat=json\n").unwrap();
        assert_eq!(
            kv,
            vec![
                ("q-max".to_string(), "5".to_string()),
                ("diameter".to_string(), "6".to_string()),
                ("format".to_string(), "json".to_string()),
            ]
        );
        assert!(parse("nonsense").is_err());
    }

    #[test]
    fn command_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.conf");
        std::fs::write(&p, "q = 3\nformat = json\nfull = true\nquiet = false\n").unwrap();
        let mut args: Vec<String> = ["drgwb", "params", "-q", "2"].iter().map(|s| s.to_string()).collect();
        merge(&mut args, &p).unwrap();
        assert_eq!(args[4..], ["--format", "json", "--full"]);
    }
}
