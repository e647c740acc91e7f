//! JSON encodings of verdicts and checks, and the tally behind exit codes.

use mirrorkit_core::field::Rat;
use mirrorkit_core::verdict::{Check, Dim, Finding, Verdict};
use serde_json::{json, Map, Value};

/// Counts of verdict states seen while building a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub certified: usize,
    pub refuted: usize,
    pub unknown: usize,
}

impl Tally {
    pub fn add<T>(&mut self, v: &Verdict<T>) {
        match v {
            Verdict::Certified(_) => self.certified += 1,
            Verdict::Refuted(_) => self.refuted += 1,
            Verdict::UnknownBeyond(_) => self.unknown += 1,
        }
    }

    pub fn check(&mut self, c: &Check) {
        if c.passed {
            self.certified += 1;
        } else {
            self.refuted += 1;
        }
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.refuted > 0 {
            1
        } else if strict && self.unknown > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(self) -> Value {
        json!({ "certified": self.certified, "refuted": self.refuted, "unknown": self.unknown })
    }
}

pub fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn dim(d: &Dim) -> Value {
    match d {
        Dim::Finite(n) => json!(n),
        Dim::Infinite => json!("inf"),
    }
}

/// `{"state": ..., "value"?: ..., "reason"?: ..., "degree"?: ..., "bound"?: ...}`.
pub fn verdict<T>(v: &Verdict<T>, value: impl Fn(&T) -> Value) -> Value {
    let mut m = Map::new();
    m.insert("state".into(), json!(v.state()));
    match v {
        Verdict::Certified(t) => {
            let x = value(t);
            if !x.is_null() {
                m.insert("value".into(), x);
            }
        }
        Verdict::Refuted(r) => {
            m.insert("reason".into(), json!(r.reason));
            if let Some(d) = r.degree {
                m.insert("degree".into(), json!(d));
            }
        }
        Verdict::UnknownBeyond(b) => {
            m.insert("bound".into(), json!(b));
        }
    }
    Value::Object(m)
}

pub fn unit_verdict<T>(v: &Verdict<T>) -> Value {
    verdict(v, |_| Value::Null)
}

pub fn check(c: &Check) -> Value {
    json!({ "name": c.name, "passed": c.passed, "detail": c.detail })
}

pub fn finding(f: &Finding) -> Value {
    let mut v = unit_verdict(&f.verdict);
    let m = v.as_object_mut().unwrap();
    m.insert("name".into(), json!(f.name));
    m.insert("detail".into(), json!(f.detail));
    v
}

/// Indented `key: value` text for `--pretty`.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) if s.contains('\n') => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        for line in s.lines() {
                            out.push_str(&format!("{}  {}\n", pad, line));
                        }
                    }
                    Some(s) => out.push_str(&format!("{}{}: {}\n", pad, k, s)),
                    None => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{}- {}\n", pad, s)),
                    None => {
                        out.push_str(&format!("{}- [{}]\n", pad, i));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", pad, scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut t = Tally::default();
        t.add(&Verdict::Certified(()));
        assert_eq!(t.exit_code(true), 0);
        t.add(&Verdict::<()>::UnknownBeyond(4));
        assert_eq!((t.exit_code(false), t.exit_code(true)), (0, 3));
        t.check(&Check::new("x", false, ""));
        assert_eq!(t.exit_code(true), 1);
    }

    #[test]
    fn verdict_fields() {
        let v = verdict(&Verdict::<usize>::refuted_at(3, "no"), |n| json!(n));
        assert_eq!(v, json!({ "state": "refuted", "reason": "no", "degree": 3 }));
        assert_eq!(unit_verdict(&Verdict::Certified(())), json!({ "state": "certified" }));
        assert_eq!(dim(&Dim::Infinite), json!("inf"));
    }

    #[test]
    fn text_rendering() {
        let v = json!({ "a": 1, "b": { "c": [1, 2] }, "d": [{ "e": "x" }], "f": "l1\nl2" });
        assert_eq!(render_text(&v), "a: 1\nb:\n  c: [1, 2]\nd:\n  - [0]\n    e: x\nf:\n  l1\n  l2\n");
    }
}
