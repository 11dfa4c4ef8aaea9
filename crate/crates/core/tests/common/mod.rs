#![allow(dead_code)]

pub mod freudenthal;
pub mod gen;
