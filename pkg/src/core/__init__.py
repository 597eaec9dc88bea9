# Core orchestration package
