use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// One checked claim: the computed value, the reference value and how they
/// are compared.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub relation: String,
    pub computed: Value,
    pub expected: Value,
    pub pass: bool,
}

impl Assertion {
    pub fn eq(name: impl Into<String>, computed: impl Serialize, expected: impl Serialize) -> Self {
        let computed = to_value(computed);
        let expected = to_value(expected);
        let pass = computed == expected;
        Assertion { name: name.into(), relation: "==".into(), computed, expected, pass }
    }

    pub fn le(name: impl Into<String>, computed: u64, bound: u64) -> Self {
        Assertion {
            name: name.into(),
            relation: "<=".into(),
            computed: Value::from(computed),
            expected: Value::from(bound),
            pass: computed <= bound,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Assertion { name: name.into(), relation: "==".into(), computed: Value::Bool(ok), expected: Value::Bool(true), pass: ok }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub computed: Value,
    pub reference: Value,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
    /// only present with `--timings`, so default reports stay reproducible
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl ReportRecord {
    pub fn new(command: &str) -> Self {
        ReportRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            computed: Value::Null,
            reference: Value::Null,
            assertions: Vec::new(),
            pass: true,
            wall_time_ms: None,
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(v));
        self
    }

    pub fn assert(&mut self, a: Assertion) {
        self.pass &= a.pass;
        self.assertions.push(a);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

/// The output of `verify-all`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub schema_version: u32,
    pub command: String,
    pub suites: Vec<ReportRecord>,
    pub pass: bool,
}

impl AggregateReport {
    pub fn new(suites: Vec<ReportRecord>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        AggregateReport { schema_version: SCHEMA_VERSION, command: "verify-all".into(), suites, pass }
    }
}
