//! Tabular output shared by the json, csv and pretty renderers.

use serde_json::{Map, Value};

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Emit a single JSON object rather than an array.
    single: bool,
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Table {
    pub fn single(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new(), single: true }
    }

    pub fn rows(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new(), single: false }
    }

    fn objects(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.clone()))
                    .collect();
                Value::Object(map)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut objects = self.objects();
        if self.single && objects.len() == 1 {
            objects.pop().unwrap()
        } else {
            Value::Array(objects)
        }
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(|e| e.to_string())?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text)).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }

    /// Space-aligned columns with a header line.
    pub fn aligned(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(self.columns.iter().map(|c| c.to_string()).collect())
            .chain(self.rows.iter().map(|r| r.iter().map(cell_text).collect()))
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| cells.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let last = row.len() - 1;
            for (i, cell) in row.iter().enumerate() {
                out.push_str(cell);
                if i < last {
                    out.push_str(&" ".repeat(widths[i] - cell.chars().count() + 2));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample(single: bool) -> Table {
        let mut t = if single { Table::single(vec!["a", "b"]) } else { Table::rows(vec!["a", "b"]) };
        t.rows.push(vec![json!("x,y"), json!(true)]);
        t
    }

    #[test]
    fn json_shape_follows_kind() {
        assert_eq!(sample(true).to_json(), json!({"a": "x,y", "b": true}));
        assert_eq!(sample(false).to_json(), json!([{"a": "x,y", "b": true}]));
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample(false).to_csv().unwrap(), "a,b\n\"x,y\",true\n");
    }

    #[test]
    fn aligned_pads_columns() {
        let mut t = sample(false);
        t.rows.push(vec![json!("long cell"), Value::Null]);
        assert_eq!(t.aligned(), "a          b\nx,y        true\nlong cell  \n");
    }
}
