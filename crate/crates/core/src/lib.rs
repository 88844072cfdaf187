pub mod densem;
pub mod invcat;
pub mod inverter;
pub mod opsem;
pub mod syntax;
pub mod value;

pub use syntax::{check_static, parse_program, parse_value, Program};
pub use value::Value;
