# pins the pytest rootdir so tests can import each other as a namespace package
