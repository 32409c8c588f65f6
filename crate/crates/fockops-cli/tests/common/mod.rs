//! Minimal JSON Schema checker covering the subset used by the shipped
//! schemas: type, properties, required, items, enum, minItems/maxItems,
//! oneOf, definitions and $ref (sibling files and #/definitions/...).

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde_json::Value;

pub struct SchemaStore {
    dir: PathBuf,
    cache: HashMap<String, Value>,
}

impl SchemaStore {
    pub fn new() -> Self {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas");
        SchemaStore { dir, cache: HashMap::new() }
    }

    pub fn load(&mut self, name: &str) -> Value {
        if let Some(v) = self.cache.get(name) {
            return v.clone();
        }
        let text = std::fs::read_to_string(self.dir.join(name))
            .unwrap_or_else(|e| panic!("schema {name}: {e}"));
        let v: Value = serde_json::from_str(&text).unwrap();
        self.cache.insert(name.to_string(), v.clone());
        v
    }

    pub fn validate(&mut self, schema_name: &str, value: &Value) -> Result<(), String> {
        let schema = self.load(schema_name);
        let root = schema.clone();
        self.check(&schema, &root, value, schema_name)
    }

    fn resolve<'a>(&mut self, reference: &str, root: &'a Value) -> (Value, Option<Value>) {
        if let Some(path) = reference.strip_prefix("#/") {
            let mut cur = root;
            for seg in path.split('/') {
                cur = &cur[seg];
            }
            (cur.clone(), None)
        } else {
            // Sibling schema file: it becomes its own root.
            let v = self.load(reference);
            (v.clone(), Some(v))
        }
    }

    fn check(&mut self, schema: &Value, root: &Value, value: &Value, at: &str) -> Result<(), String> {
        if let Some(reference) = schema["$ref"].as_str() {
            let (resolved, new_root) = self.resolve(reference, root);
            let root = new_root.unwrap_or_else(|| root.clone());
            return self.check(&resolved, &root, value, at);
        }
        if let Some(one_of) = schema["oneOf"].as_array() {
            let hits = one_of
                .iter()
                .filter(|s| self.check(s, root, value, at).is_ok())
                .count();
            if hits == 0 {
                return Err(format!("{at}: no oneOf branch matched"));
            }
            return Ok(());
        }
        if let Some(types) = type_list(&schema["type"]) {
            let ok = types.iter().any(|t| matches_type(t, value));
            if !ok {
                return Err(format!("{at}: expected type {types:?}, got {value}"));
            }
        }
        if let Some(allowed) = schema["enum"].as_array() {
            if !allowed.contains(value) {
                return Err(format!("{at}: {value} not in enum"));
            }
        }
        if let Some(obj) = value.as_object() {
            if let Some(required) = schema["required"].as_array() {
                for key in required {
                    let key = key.as_str().unwrap();
                    if !obj.contains_key(key) {
                        return Err(format!("{at}: missing required field {key}"));
                    }
                }
            }
            if let Some(props) = schema["properties"].as_object() {
                for (key, sub) in props {
                    if let Some(v) = obj.get(key) {
                        self.check(sub, root, v, &format!("{at}.{key}"))?;
                    }
                }
            }
        }
        if let Some(arr) = value.as_array() {
            if let Some(min) = schema["minItems"].as_u64() {
                if (arr.len() as u64) < min {
                    return Err(format!("{at}: fewer than {min} items"));
                }
            }
            if let Some(max) = schema["maxItems"].as_u64() {
                if (arr.len() as u64) > max {
                    return Err(format!("{at}: more than {max} items"));
                }
            }
            let items = &schema["items"];
            if !items.is_null() {
                for (i, v) in arr.iter().enumerate() {
                    self.check(items, root, v, &format!("{at}[{i}]"))?;
                }
            }
        }
        Ok(())
    }
}

fn type_list(t: &Value) -> Option<Vec<String>> {
    match t {
        Value::String(s) => Some(vec![s.clone()]),
        Value::Array(a) => Some(a.iter().filter_map(|v| v.as_str().map(String::from)).collect()),
        _ => None,
    }
}

fn matches_type(t: &str, value: &Value) -> bool {
    match t {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}
