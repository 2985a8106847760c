use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn push_object(out: &mut Vec<String>, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                push_object(out, &key, x);
            }
        }
        other => out.push(format!("{prefix:<28} {}", scalar(other))),
    }
}

/// Human-readable rendering: one `key value` line per leaf, checks as PASS/FAIL lines.
pub(crate) fn table(v: &Value) -> String {
    let mut out = Vec::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            if k == "checks" {
                continue;
            }
            push_object(&mut out, k, x);
        }
        if let Some(Value::Array(checks)) = map.get("checks") {
            for c in checks {
                let passed = c["passed"].as_bool().unwrap_or(false);
                let name = scalar(&c["name"]);
                match c.get("witness") {
                    Some(w) if !passed => out.push(format!("FAIL {name}: {}", scalar(w))),
                    _ => out.push(format!("{} {name}", if passed { "PASS" } else { "FAIL" })),
                }
            }
        }
    } else {
        out.push(scalar(v));
    }
    out.join("\n")
}
