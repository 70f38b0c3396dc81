from ordcover.cli import main
import sys

sys.exit(main())
