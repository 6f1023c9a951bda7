use std::collections::HashMap;
use std::sync::Arc;

use super::PolyError;

/// Ordered set of variable names. Index 0 is the smallest variable under
/// every supported monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableTable {
    names: Arc<[String]>,
    index: Arc<HashMap<String, usize>>,
}

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(PolyError::EmptyVariableName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
            index: Arc::new(index),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty_names() {
        assert!(matches!(
            VariableTable::new(["x1", "x1"]),
            Err(PolyError::DuplicateVariable(_))
        ));
        assert!(matches!(
            VariableTable::new(["x1", ""]),
            Err(PolyError::EmptyVariableName)
        ));
    }

    #[test]
    fn index_lookup() {
        let t = VariableTable::new(["a", "b", "c"]).unwrap();
        assert_eq!(t.index_of("c"), Some(2));
        assert_eq!(t.index_of("d"), None);
        assert_eq!(t.name(1), "b");
    }
}
