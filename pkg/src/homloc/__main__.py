from homloc.cli import main

raise SystemExit(main())
